"""Run the layout service: ``python -m nodetrix.service``.

Port comes from $NTX_PORT (default 8080), host from $NTX_HOST.
"""

from __future__ import annotations

import os

import uvicorn


def main() -> None:
    uvicorn.run(
        "nodetrix.service.app:app",
        host=os.environ.get("NTX_HOST", "127.0.0.1"),
        port=int(os.environ.get("NTX_PORT", "8080")),
        log_level="warning",
    )


if __name__ == "__main__":
    main()
