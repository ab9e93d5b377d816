"""CSV and JSON rendering of exact tables."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Iterable, Sequence


def ratio(p: Fraction) -> str:
    p = Fraction(p)
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


def float17(p: Fraction) -> str:
    # float() of a Fraction is correctly rounded (half-even)
    return format(float(p), ".17g")


def prob_columns(p: Fraction) -> list:
    p = Fraction(p)
    return [p.numerator, p.denominator, float17(p)]


PROB_HEADER = ["probability_num", "probability_den", "probability_float"]


def csv_text(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"
