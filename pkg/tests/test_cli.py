import io
from pathlib import Path

import pytest

from pcmcat.category import from_semiring
from pcmcat.cauchy import cauchy_product
from pcmcat.cli import main, parse_arrow, parse_fincat, parse_scalar
from pcmcat.errors import (
    ParseError,
    ScalarParseError,
    UnknownIndexArrowError,
    ValidationError,
)
from pcmcat.fincat import cyclic_category
from pcmcat.pcm import Residue

DATA = Path(__file__).parent / "data"


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_parse_fincat_z2():
    cat = parse_fincat((DATA / "z2.fincat").read_text())
    assert len(cat.objects) == 1
    assert len(cat.arrows) == 2
    assert cat.compose("z1", "z1") == "id_e"


def test_parse_fincat_two_object_file():
    cat = parse_fincat((DATA / "two_object.fincat").read_text())
    assert len(cat.objects) == 2
    assert len(cat.arrows) == 5


def test_parse_fincat_missing_composite_is_validation_error():
    with pytest.raises(ValidationError):
        parse_fincat((DATA / "missing_composite.fincat").read_text())


def test_parse_fincat_malformed_line_reports_line_number():
    with pytest.raises(ParseError) as excinfo:
        parse_fincat((DATA / "malformed.fincat").read_text())
    assert excinfo.value.line == 2


def test_parse_scalar_variants():
    assert parse_scalar("-3", "int") == -3
    assert parse_scalar("2/3", "rational").numerator == 2
    assert parse_scalar("3 mod 5", "mod:5") == Residue(3, 5)
    assert parse_scalar("1.5+0.5i", "complex") == complex(1.5, 0.5)


def test_parse_scalar_rejects_fraction_over_int():
    with pytest.raises(ScalarParseError):
        parse_scalar("1/3", "int")


def test_parse_arrow_defaults_unlisted_to_zero():
    cc = cauchy_product(from_semiring("int"), cyclic_category(2))
    name, arrow = parse_arrow("arrow a (*,*) -> (*,*)\nz0 = 2\n", cc)
    assert name == "a"
    assert arrow.coeff("z0") == 2
    assert arrow.coeff("z1") == 0


def test_parse_arrow_unknown_index_arrow():
    cc = cauchy_product(from_semiring("int"), cyclic_category(2))
    with pytest.raises(UnknownIndexArrowError):
        parse_arrow("arrow a (*,*) -> (*,*)\nz9 = 2\n", cc)


def test_validate_command_accepts_good_file():
    code, out, _ = run_cli("validate", "--index", str(DATA / "z2.fincat"))
    assert code == 0
    assert "PASS" in out


def test_validate_command_rejects_incomplete_table():
    code, out, err = run_cli("validate", "--index", str(DATA / "missing_composite.fincat"))
    assert code == 2
    assert "error" in err


def test_laws_int_exits_zero():
    code, out, _ = run_cli("laws", "--base", "int", "--family-size", "3", "--trials", "40")
    assert code == 0
    assert "CHECK" in out
    assert "FAIL" not in out


def test_laws_kbounded2_exits_one_with_witness():
    code, out, _ = run_cli("laws", "--base", "kbounded:2", "--family-size", "3",
                           "--trials", "40")
    assert code == 1
    assert "strong-distributivity[kbounded:2] FAIL" in out
    assert "witness=[{i0=1,i1=1};{i0=1,i1=1}]" in out


def test_laws_unitball_runs_pcm_suite_only():
    code, out, _ = run_cli("laws", "--base", "unitball:1:l1", "--family-size", "3",
                           "--trials", "30")
    assert code == 0
    assert "strong-distributivity" not in out


def test_cauchy_describe():
    code, out, _ = run_cli("cauchy", "describe", "--base", "int", "--index", "cyclic:2")
    assert code == 0
    assert "identity at (*,*): {z0=1,z1=0}" in out


def test_convolve_command():
    code, out, _ = run_cli(
        "convolve", "--base", "int", "--index", "cyclic:2",
        str(DATA / "f_z2.arrow"), str(DATA / "f_z2.arrow"),
    )
    assert code == 0
    assert "z0 = 2" in out and "z1 = 2" in out


def test_convolve_rejects_rational_scalar_over_int_base():
    code, _, err = run_cli(
        "convolve", "--base", "int", "--index", "cyclic:2",
        str(DATA / "third.arrow"), str(DATA / "f_z2.arrow"),
    )
    assert code == 2
    assert "error" in err


def test_sum_command():
    code, out, _ = run_cli(
        "sum", "--base", "int", "--index", "cyclic:2",
        str(DATA / "f_z2.arrow"), str(DATA / "g_z2.arrow"),
    )
    assert code == 0
    assert "z0 = 3" in out and "z1 = 1" in out


def test_sum_not_summable_exit_code():
    code, out, _ = run_cli(
        "sum", "--base", "kbounded:1", "--index", "cyclic:2",
        str(DATA / "g_z2.arrow"), str(DATA / "g_z2.arrow"),
    )
    assert code == 3
    assert "NOT SUMMABLE" in out


def test_arrow_file_over_bounded_base_can_be_refused():
    code, _, err = run_cli(
        "sum", "--base", "kbounded:1", "--index", "cyclic:2",
        str(DATA / "f_z2.arrow"),
    )
    assert code == 3
    assert "not summable" in err


def test_substitute_all_ones_prints_zero():
    code, out, _ = run_cli("substitute", "--p", "5", "--s", "1", str(DATA / "ones5.arrow"))
    assert code == 0
    assert out.strip() == "0.000000000000+0.000000000000i"


def test_embed_sigma():
    code, out, _ = run_cli(
        "embed", "--which", "sigma", "--base", "int", "--index", "cyclic:2",
        str(DATA / "f_z2.arrow"),
    )
    assert code == 0
    assert out.strip() == "2"


def test_embed_eta():
    code, out, _ = run_cli(
        "embed", "--which", "eta", "--base", "int", "--index", "cyclic:2",
        "--at", "*", "--scalar", "5",
    )
    assert code == 0
    assert "z0 = 5" in out and "z1 = 0" in out


def test_embed_gamma():
    code, out, _ = run_cli(
        "embed", "--which", "gamma", "--base", "int", "--index", "cyclic:2",
        "--at", "*", "--index-arrow", "z1",
    )
    assert code == 0
    assert "z0 = 0" in out and "z1 = 1" in out


def test_embed_star():
    code, out, _ = run_cli(
        "embed", "--which", "star", "--base", "int", "--index", "cyclic:2",
        "--scalar", "3", "--index-arrow", "z1",
    )
    assert code == 0
    assert "z0 = 0" in out and "z1 = 3" in out


def test_product_command():
    code, out, _ = run_cli("product", "--base", "int", "--base2", "mod:5",
                           "--trials", "40")
    assert code == 0
    assert "product:" in out


def test_series_binomial():
    code, out, _ = run_cli("series", "--order", "2", "--p", "1,1", "--q", "1,1")
    assert code == 0
    assert "coeffs: 1, 2, 1" in out
    assert "tail <= 0" in out


def test_series_geometric():
    code, out, _ = run_cli("series", "--order", "3", "--p", "geom:1:1/2",
                           "--q", "geom:1:1/2")
    assert code == 0
    assert "coeffs: 1, 1, 3/4, 1/2" in out


def test_identical_seeds_give_identical_bytes():
    battery = [
        ("laws", "--base", "int", "--seed", "7", "--family-size", "3", "--trials", "40"),
        ("laws", "--base", "kbounded:2", "--seed", "7", "--family-size", "3",
         "--trials", "40"),
        ("substitute", "--p", "5", "--s", "2", str(DATA / "ones5.arrow")),
        ("series", "--order", "4", "--p", "geom:1:1/2", "--q", "1,1"),
    ]

    def run_battery():
        chunks = []
        for argv in battery:
            code, out, _ = run_cli(*argv)
            chunks.append(f"exit={code}\n{out}")
        return "".join(chunks)

    assert run_battery() == run_battery()
