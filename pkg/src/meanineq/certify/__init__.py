"""Proof certificates for the mean-only statements and their exact checker."""
from __future__ import annotations

from pathlib import Path

from ..errors import CertificateFormatError
from .checker import FAILED, PROVED, CertResult, Failure, check_certificate
from .model import (
    Certificate,
    DeflateZero,
    Expand,
    Factor,
    NonnegCoeffs,
    PositiveAtOne,
    SplitSquare,
    SturmNoPositiveRoots,
    UnitRootFactor,
    WitnessTerm,
    dumps,
    loads,
    to_json,
)

DATA_DIR = Path(__file__).with_name("data")


def load_certificate(path) -> Certificate:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read certificate {path}: {exc}") from exc
    return loads(text)


def save_certificate(cert: Certificate, path) -> Path:
    path = Path(path)
    path.write_text(dumps(cert), encoding="utf-8")
    return path


def builtin_paths():
    return sorted(DATA_DIR.glob("*.json"))


def builtin_certificates():
    return [load_certificate(p) for p in builtin_paths()]


def check_all(certs=None):
    """Check each certificate against its registry statement."""
    from .. import registry

    certs = builtin_certificates() if certs is None else certs
    return [check_certificate(c, registry.get(c.statement_id)) for c in certs]


__all__ = [
    "Certificate", "Expand", "SplitSquare", "WitnessTerm", "Factor", "UnitRootFactor",
    "DeflateZero", "NonnegCoeffs", "SturmNoPositiveRoots", "PositiveAtOne",
    "CertResult", "Failure", "PROVED", "FAILED", "CertificateFormatError",
    "check_certificate", "check_all", "builtin_certificates", "builtin_paths",
    "load_certificate", "save_certificate", "dumps", "loads", "to_json",
]
