"""Interface control documents as code: markup, register maps, gates and drift checks."""

from ._icdoc import (
    ConfigError,
    ParseError,
    ValidationError,
    build,
    check,
    compare_versions,
    extract_field,
    field_mask,
    generate_header,
    pack_field,
    parse_rdl,
    render,
    run_gates,
    sha256,
    validate_rdl,
    verify_header_checksum,
)

__all__ = [
    "ConfigError",
    "ParseError",
    "ValidationError",
    "build",
    "check",
    "compare_versions",
    "extract_field",
    "field_mask",
    "generate_header",
    "pack_field",
    "parse_rdl",
    "render",
    "run_gates",
    "sha256",
    "validate_rdl",
    "verify_header_checksum",
]
