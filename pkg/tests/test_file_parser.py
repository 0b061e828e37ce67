"""
文件解析器测试：辫子词文件、约化数据与示例语料清单
"""

import json

import pytest

from app.core.errors import BraidSyntaxError, ReductionDataError
from app.schemas import SingularityKind


def test_strip_comments_keeps_positions(parser):
    text = "1 2 # 注释\n-1 # 再一行"
    stripped = parser.strip_comments(text)
    assert len(stripped) == len(text)
    assert stripped.split("\n")[1].startswith("-1 ")
    assert "#" not in stripped


def test_parse_word_text_with_comments(parser):
    w = parser.parse_word_text("# β_1\n1 -2  # 末尾注释\n", 3)
    assert w.letters == (1, -2)


def test_parse_word_file(parser, tmp_path):
    path = tmp_path / "w.braid"
    path.write_text("b[1,1,1] -2\n", encoding="utf-8")
    assert parser.parse_word_file(path, 3).letters == (1, -2)
    assert parser.load(path, strings=3).letters == (1, -2)


def test_syntax_error_position_refers_to_original_text(parser):
    text = "# 注释\n1 y"
    with pytest.raises(BraidSyntaxError) as info:
        parser.parse_word_text(text, 3)
    assert text[info.value.position] == "y"


def test_default_boundary_kind_follows_m(parser):
    rd = parser.reduction_from_dict(
        {
            "n": 5,
            "components": [
                {
                    "is_pA": True,
                    "boundary": [{"m": 1, "kappa": 1}, {"m": 1, "kappa": 1}, {"m": 3, "kappa": 1}],
                    "outer": [1],
                }
            ],
        }
    )
    kinds = [s.kind for s in rd.components[0].boundary_items]
    assert kinds == [SingularityKind.PUNCTURE, SingularityKind.PUNCTURE, SingularityKind.DELETED_DISK]
    assert rd.components[0].outer_sings[0].kind == SingularityKind.OUTER_BOUNDARY
    assert rd.components[0].enclosed_punctures == 5


@pytest.mark.parametrize(
    "payload",
    [
        {"components": []},
        {"n": 3, "components": [{"boundary": [{"m": 1}]}]},
        {"n": 3, "components": [{"boundary": [{"m": 1, "kappa": 0}]}]},
        {"n": 3, "components": [{"boundary": [{"m": 1, "kappa": 1, "kind": "interior"}]}]},
    ],
)
def test_malformed_reduction_data(parser, payload):
    with pytest.raises(ReductionDataError):
        parser.reduction_from_dict(payload)


def test_parse_reduction_file_errors(parser, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ReductionDataError):
        parser.parse_reduction_file(broken)
    with pytest.raises(ReductionDataError):
        parser.parse_reduction_file(tmp_path / "missing.json")


def test_parse_reduction_file(parser, tmp_path):
    path = tmp_path / "rd.json"
    path.write_text(
        json.dumps({"n": 3, "components": [{"is_pA": True, "boundary": [{"m": 1, "kappa": 1}] * 3}]}),
        encoding="utf-8",
    )
    rd = parser.parse_reduction_file(path)
    assert rd.strings == 3
    assert rd.components[0].is_pA


def test_parse_corpus(parser):
    examples = parser.parse_corpus()
    names = [e.name for e in examples]
    assert names == [
        "beta_1",
        "beta_2",
        "beta_3",
        "beta_4",
        "beta_5",
        "beta_8",
        "beta_prime_1",
        "beta_prime_2",
        "beta_double_prime",
    ]
    for example in examples:
        assert example.word_file.exists()
        assert example.reduction_file.exists()
        assert example.lam > 1.0


def test_load_rejects_unknown_extension(parser, tmp_path):
    with pytest.raises(ValueError):
        parser.load(tmp_path / "notes.txt")
