"""Run manifests written next to every artifact."""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from . import __version__

UTC = timezone.utc

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def file_digest(path: str | Path) -> str:
    """SHA-256 hex digest of a file's bytes."""
    h = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def utc_now() -> str:
    return datetime.now(UTC).isoformat(timespec="seconds")


def manifest_path(artifact: str | Path) -> Path:
    artifact = Path(artifact)
    return artifact.with_name(artifact.name + MANIFEST_SUFFIX)


@dataclass
class RunManifest:
    """Command line, resolved configuration, seeds and digests of one run."""

    command: list[str]
    config: dict[str, Any] = field(default_factory=dict)
    seeds: dict[str, int] = field(default_factory=dict)
    inputs: dict[str, str] = field(default_factory=dict)
    outputs: dict[str, str] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)
    version: str = __version__
    started_at: str = field(default_factory=utc_now)
    finished_at: str | None = None

    def add_input(self, path: str | Path) -> None:
        """Record an input file digest; builtin graph names have no file and are skipped."""
        if Path(path).is_file():
            self.inputs[str(path)] = file_digest(path)

    def add_output(self, path: str | Path) -> None:
        self.outputs[str(path)] = file_digest(path)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "seeds": self.seeds,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "extra": self.extra,
            "version": self.version,
            "started_at": self.started_at,
            "finished_at": self.finished_at,
        }

    def write(self, artifact: str | Path) -> Path:
        """
        Finish the manifest and write it as ``<artifact>.manifest.json``.

        Args:
            artifact: Primary artifact the manifest describes; its digest is recorded

        Returns:
            Path of the manifest file
        """
        if Path(artifact).is_file():
            self.add_output(artifact)
        self.finished_at = utc_now()
        path = manifest_path(artifact)
        path.write_text(json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n")
        logger.debug(f"Wrote manifest {path}")
        return path
