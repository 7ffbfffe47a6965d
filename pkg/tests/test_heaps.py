import pytest

from toggle.errors import InputError
from toggle.heaps import (JL_CODE, OctalCode, crosscheck, jl_grundy, jl_grundy_direct,
                          jl_grundy_octal, jl_sum_grundy, load_bfile, matching_offsets,
                          octal_grundy, octal_moves, octal_sequence, parse_bfile,
                          parse_bfile_full, path_jl_grundy_table, path_jl_moves,
                          transform_octal_to_p01)
from toggle.petersen import petersen_nimber


def test_octal_code():
    c = OctalCode.parse("0.11337")
    assert c.digits == (1, 1, 3, 3, 7)
    assert c.options(5) == {1, 2, 4} and c.options(1) == {1} and c.options(9) == set()
    assert str(c) == "0.11337"
    assert OctalCode.parse("·356").digits == (3, 5, 6)
    with pytest.raises(InputError):
        OctalCode((8,))
    with pytest.raises(InputError):
        OctalCode.parse("0.1x")


def test_octal_examples():
    assert octal_grundy(JL_CODE, 0) == 0
    assert octal_grundy(JL_CODE, 1) == 1
    assert octal_grundy("356", 1) == 1
    with pytest.raises(InputError):
        octal_grundy(JL_CODE, -1)


def test_octal_option_semantics():
    c = OctalCode.parse("0.356")
    assert octal_moves(c, 1) == {(1, ())}
    assert octal_moves(c, 2) == {(1, (1,)), (2, ())}
    assert octal_moves(c, 5) == {(1, (4,)), (2, (1, 2)), (3, (2,)), (3, (1, 1))}


def test_prop48_structure():
    code = OctalCode.parse(JL_CODE)
    for n in range(1, 41):
        assert path_jl_moves(n) == octal_moves(code, n), n


def test_path_route_matches_octal():
    assert path_jl_grundy_table(150) == octal_sequence(JL_CODE, 150)


def test_jl_examples():
    assert jl_grundy(3) == 1
    assert jl_grundy(6) == 0
    for m in range(5, 13):
        assert jl_grundy(m) == petersen_nimber("P01", m, 1)
    with pytest.raises(InputError):
        jl_grundy(2)


def test_jl_routes_agree():
    for m in range(3, 21):
        assert jl_grundy_direct(m) == jl_grundy_octal(m)


def test_jl_sums():
    for k in range(3, 11):
        assert jl_sum_grundy([k, k]) == 0
        assert jl_grundy(2 * k) == 0
    assert jl_sum_grundy([3]) == 1
    assert jl_sum_grundy([]) == 0
    for m in range(6, 17, 2):
        assert jl_grundy(m) == jl_sum_grundy([m // 2, m // 2])


def test_transform():
    assert transform_octal_to_p01([5, 9, 7, 0, 2, 0]) == [1, 0, 1]
    assert transform_octal_to_p01([0, 0, 0]) == []
    with pytest.raises(InputError):
        transform_octal_to_p01([1, 2])


def test_transform_alignment():
    ref = load_bfile("A071426")
    transformed = transform_octal_to_p01(ref.values)
    p01 = {m: petersen_nimber("P01", m, 1) for m in range(3, 13)}
    assert matching_offsets(p01, transformed) == [8]
    # entry t of the transform corresponds to m = t + 8, i.e. heap n = m - 5
    assert all(transformed[m - 8] == p01[m] for m in range(8, 13))


def test_bfile_parsing():
    assert parse_bfile("1 0\n2 1\n") == [0, 1]
    assert parse_bfile("# c\n\n5 3\n6 4\n") == [3, 4]
    assert parse_bfile_full("5 3\n6 4\n").offset == 5
    with pytest.raises(InputError, match="line 2"):
        parse_bfile("1 0\n3 1\n")
    with pytest.raises(InputError):
        parse_bfile("1 0\n1 1\n")
    with pytest.raises(InputError):
        parse_bfile("1 x\n")


def test_crosscheck():
    x = [0, 1, 2]
    assert crosscheck(x, x, 0).ok
    r = crosscheck([0, 1, 5], [9, 0, 1, 2], 1)
    assert (r.mismatch, r.computed_value, r.reference_value) == (2, 5, 2)
    assert [9, 0, 1, 2][2 + 1] == r.reference_value


def test_bundled_a071426():
    ref = load_bfile("A071426")
    assert ref.offset == 0
    assert crosscheck(octal_sequence(JL_CODE, 101), ref.values, 0).compared == 101
    assert crosscheck(octal_sequence(JL_CODE, 101), ref.values, 0).ok


def test_data_dir_env(tmp_path, monkeypatch):
    (tmp_path / "b071426.txt").write_text("0 0\n1 1\n")
    monkeypatch.setenv("TOGGLE_DATA_DIR", str(tmp_path))
    assert load_bfile("A071426").values == (0, 1)
    with pytest.raises(InputError):
        load_bfile("A361517")
