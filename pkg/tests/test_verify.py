import pytest

from qhspace.verify import ALL_SUITES, report, run_suite


def test_full_suite_passes(s3_cat, s3_modules):
    cert = run_suite(s3_cat, s3_modules["order2"])
    assert cert.passed, cert.to_text()
    names = [c.name for c in cert.checks]
    assert "fixedpoint_dims" in names and "component_roundtrip" in names
    assert any(n.startswith("alg1.") for n in names)


def test_category_only(s3_cat):
    cert = run_suite(s3_cat, None)
    assert cert.passed
    assert all(c.name.startswith("cat.") for c in cert.checks)


def test_unknown_suite_rejected(s3_cat, s3_modules):
    with pytest.raises(ValueError):
        run_suite(s3_cat, s3_modules["order2"], suites=("presentation", "nope"))


def test_suite_subset(s3_cat, s3_modules):
    cert = run_suite(s3_cat, s3_modules["order2"], suites=("fixedpoint",))
    assert [c.name for c in cert.checks] == ["fixedpoint_dims"]
    assert cert.passed


def test_report_formats(s3_cat):
    cert = run_suite(s3_cat, None)
    assert "cat." in report(cert, "text")
    assert report(cert, "json").startswith("{")
    with pytest.raises(ValueError):
        report(cert, "yaml")


def test_all_suites_names():
    assert ALL_SUITES == ("presentation", "module", "algebra", "positivity",
                          "fixedpoint", "roundtrip")
