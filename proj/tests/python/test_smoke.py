import hashlib
import os
from pathlib import Path

import pytest

import icdoc

FIXTURES = Path(os.environ.get("ICDOC_FIXTURES", Path(__file__).resolve().parent.parent / "fixtures"))


def read(name):
    return (FIXTURES / name).read_text()


def test_sha256_matches_hashlib():
    for data in (b"", b"abc", bytes(range(256))):
        assert icdoc.sha256(data) == hashlib.sha256(data).hexdigest()


def test_versions():
    assert icdoc.compare_versions("1.1", "1.1.0") == 0
    assert icdoc.compare_versions("1.9", "1.10") == -1


def test_pack_extract_round_trip():
    for msb, lsb, value in [(0, 0, 1), (7, 4, 0xA), (63, 0, 2**64 - 1), (31, 16, 0x1234)]:
        reg = 0x5555_5555_5555_5555
        packed = icdoc.pack_field(reg, msb, lsb, value)
        assert icdoc.extract_field(packed, msb, lsb) == value
        mask = icdoc.field_mask(msb, lsb)
        assert mask == sum(1 << b for b in range(lsb, msb + 1))
        assert packed & ~mask & (2**64 - 1) == reg & ~mask & (2**64 - 1)
    with pytest.raises(ValueError):
        icdoc.pack_field(0, 3, 0, 16)
    with pytest.raises(ValueError):
        icdoc.field_mask(0, 3)


def test_rdl_parse_validate_header():
    src = read("regs.rdl")
    m = icdoc.parse_rdl(src)
    assert m["name"] == "link_ctrl"
    assert [r["name"] for r in m["registers"]] == ["CTRL", "STATUS"]
    assert icdoc.validate_rdl(src) == []
    broken = src.replace("      reset = 0;\n", "", 1)
    assert [v["rule_id"] for v in icdoc.validate_rdl(broken)] == ["RDL-C1"]
    header = icdoc.generate_header(src, "icd-link", "1.0", publish=True)
    assert "#define LINK_CTRL_CTRL_MODE_MASK 0xE\n" in header
    assert icdoc.verify_header_checksum(header)
    with pytest.raises(icdoc.ValidationError):
        icdoc.generate_header(broken, "icd-link", "1.0", publish=True)


def test_parse_error_carries_line():
    with pytest.raises(icdoc.ParseError) as info:
        icdoc.parse_rdl("addrmap a {\n reg { } R;\n};")
    assert info.value.line == 2


def test_gates_on_fixtures():
    clean = icdoc.run_gates(read("clean.icd"), [read("central.glossary")], read("config.json"))
    assert clean["verdict"] == "pass"
    assert clean["violations"] == []
    broken = icdoc.run_gates(read("gates/broken-link.icd"), [read("central.glossary")],
                             link_exists=lambda target: False)
    assert [v["rule_id"] for v in broken["violations"]] == ["G-LINK-1"]
    assert broken["text"].endswith("FAIL (1 error, 0 warnings)\n")


def test_build_and_check(tmp_path):
    out = tmp_path / "out"
    result = icdoc.build(FIXTURES / "clean.icd", out, "publish", config=FIXTURES / "config.json",
                         glossaries=[FIXTURES / "central.glossary"], src="r1")
    assert result["exit_code"] == 0
    assert "manifest.json" in result["outputs"]
    code, lines = icdoc.check(str(out / "manifest.json"), out)
    assert code == 0
    assert all(line.startswith("ok ") for line in lines)
    (out / "icd-sensor.html").write_text("changed")
    code, lines = icdoc.check(str(out / "manifest.json"), out)
    assert code == 4


def test_render_is_deterministic():
    files = icdoc.render(read("clean.icd"), [read("central.glossary")])
    assert sorted(files) == ["icd-sensor-sensor.h", "icd-sensor.html"]
    assert files == icdoc.render(read("clean.icd"), [read("central.glossary")])
