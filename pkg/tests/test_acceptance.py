"""Exit criteria. Every check is exact except the sphere-map smoke test (1e-12).

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per criterion.
"""

import re

import pytest

from crmaps import acceptance
from crmaps.canonical import group_product_polynomial
from crmaps.groups import make_group
from crmaps.poly import Poly

# transcription of the published 17-term polynomial, parsed independently of the package tables
SEVEN_DISPLAY = (
    "x1^7 + 7x1^5x2 + 14x1^3x2^2 + 7x1x2^3 + 7x1^3x3 + 14x1x2x3 + x2^7 + 7x1^2x2^4x3 "
    "+ 7x2^5x3 + 7x1^4x2x3^2 + 7x1^2x2^2x3^2 + 14x2^3x3^2 + 14x1^2x3^3 + 7x2x3^3 "
    "+ 7x1x2^2x3^4 + 7x1x3^5 + x3^7"
)


def parse_display(text: str) -> dict:
    terms = {}
    for chunk in text.split("+"):
        chunk = chunk.strip()
        m = re.match(r"(\d*)(.*)", chunk)
        coeff = int(m.group(1) or 1)
        exp = [0, 0, 0]
        for var, power in re.findall(r"x(\d)(?:\^(\d+))?", m.group(2)):
            exp[int(var) - 1] += int(power or 1)
        terms[tuple(exp)] = coeff
    return terms


def test_seven_display_transcription():
    terms = parse_display(SEVEN_DISPLAY)
    assert len(terms) == 17
    assert group_product_polynomial(make_group("seven", 7)) == Poly(terms, 3)


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA], ids=[c[1] for c in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_criterion(number)
    print(result.line())
    assert result.ok, result.detail
