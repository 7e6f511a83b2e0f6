import pytest

from nilprod.errors import SpecError
from nilprod.hallbasis import K3P2, STANDARD
from nilprod.specs import GroupSpec, Presentation11, parse_group_spec


def test_parse_minimal_spec():
    spec = parse_group_spec('{"prime": 3, "class": 2, "orders": [1, 1]}')
    assert spec.p == 3 and spec.k == 2 and spec.orders == (1, 1)
    assert spec.variant == STANDARD


def test_parse_k3p2_spec():
    spec = parse_group_spec('{"prime": 2, "class": 3, "orders": [1, 2], "variant": "k3p2"}')
    assert spec.variant == K3P2


def test_parse_presentation11_spec():
    spec = parse_group_spec(
        '{"prime": 3, "presentation11": {"alpha": 2, "beta": 2, "gamma": 1, "sigma": 0}}'
    )
    assert spec.presentation11 == Presentation11(2, 2, 1, 0)


def test_parse_relators():
    spec = parse_group_spec(
        '{"prime": 3, "class": 2, "orders": [1, 1], "relators": ["[x2,x1]^3"]}'
    )
    assert len(spec.relators) == 1


def test_unknown_fields_rejected():
    with pytest.raises(SpecError, match="unknown"):
        parse_group_spec('{"prime": 3, "class": 2, "orders": [1], "color": "red"}')
    with pytest.raises(SpecError, match="unknown"):
        parse_group_spec('{"prime": 3, "presentation11": {"alpha": 1, "beta": 1, "gamma": 1, "sigma": 1, "x": 2}}')


@pytest.mark.parametrize(
    "text,match",
    [
        ('{"class": 2, "orders": [1]}', "prime"),
        ('{"prime": 4, "class": 2, "orders": [1, 1]}', "prime"),
        ('{"prime": 3, "orders": [1, 1]}', "class"),
        ('{"prime": 3, "class": 2, "orders": []}', "orders"),
        ('{"prime": 3, "class": 2, "orders": [0, 1]}', "orders"),
        ('{"prime": 3, "class": 2, "orders": [1, 1], "variant": "weird"}', "variant"),
        ('{"prime": 3, "class": 3, "orders": [1, 1], "variant": "k3p2"}', "k3p2"),
        ('{"prime": 2, "class": 3, "orders": [1, 1]}', "k3p2"),
        ('{"prime": 3, "class": 2, "orders": [1, 1], "relators": [3]}', "relators"),
        ('not json', "JSON"),
    ],
)
def test_rejections(text, match):
    with pytest.raises(SpecError, match=match):
        parse_group_spec(text)


def test_presentation11_constraints():
    with pytest.raises(SpecError, match="odd"):
        Presentation11(1, 1, 1, 1).validate(2)
    with pytest.raises(SpecError, match="gamma >= sigma"):
        Presentation11(2, 2, 1, 2).validate(3)
    with pytest.raises(SpecError, match="beta >= gamma"):
        Presentation11(3, 1, 2, 1).validate(3)
    with pytest.raises(SpecError, match="alpha\\+sigma"):
        Presentation11(2, 2, 2, 1).validate(3)
    with pytest.raises(SpecError, match="alpha >= beta"):
        Presentation11(1, 2, 1, 1).validate(3)
    Presentation11(2, 2, 1, 0).validate(3)
    Presentation11(1, 1, 1, 1).validate(3)


def test_presentation11_excludes_other_fields():
    with pytest.raises(SpecError, match="presentation11"):
        GroupSpec(
            p=3, k=2, orders=(1, 1), presentation11=Presentation11(1, 1, 1, 1)
        ).validate()
