"""Presentation documents, polynomial text syntax and report serialization."""
from __future__ import annotations

import csv
import io as _io
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .closed_forms import ColonData, ColonEntry, InvalidColonData, TopCoefficients
from .oracle import AlgebraPresentation, GradingError, HilbertTable, QuotientPresentation, ReesPresentation
from .polynomials import SparsePolynomial
from .report import MixedMultReport


class PresentationError(ValueError):
    """Malformed or inconsistent presentation document."""


class PolynomialSyntaxError(PresentationError):
    def __init__(self, message: str, text: str, position: int):
        self.reason = message
        self.text = text
        self.position = position
        caret = " " * position + "^"
        super().__init__(f"{message} at column {position + 1}\n  {text}\n  {caret}")


# polynomial syntax

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def _tokenize(text: str, names: Sequence[str]) -> list[tuple[str, object, int]]:
    index = {name: i for i, name in enumerate(names)}
    by_length = sorted(names, key=len, reverse=True)
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolynomialSyntaxError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastgroup)
        if m.group("num"):
            out.append(("num", Fraction(m.group("num")), start))
        elif m.group("name"):
            word = m.group("name")
            # juxtaposed names such as "xy" split greedily into declared names
            k = 0
            while k < len(word):
                hit = next((nm for nm in by_length if word.startswith(nm, k)), None)
                if hit is None:
                    raise PolynomialSyntaxError(f"unknown variable in {word!r}", text, start + k)
                out.append(("var", index[hit], start + k))
                k += len(hit)
        else:
            out.append(("op", m.group("op"), start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.nvars = len(names)
        self.tokens = _tokenize(text, names)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str):
        raise PolynomialSyntaxError(message, self.text, self.peek()[2])

    def parse(self) -> SparsePolynomial:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self) -> SparsePolynomial:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        out = self.term() * sign
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> SparsePolynomial:
        out = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                out = out * self.power()
            elif kind in ("num", "var") or (kind == "op" and val == "("):
                out = out * self.power()
            else:
                return out

    def power(self) -> SparsePolynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, val, _ = self.peek()
            if kind != "num" or val.denominator != 1:
                self.fail("exponent must be a non-negative integer")
            self.take()
            base = base ** int(val)
        return base

    def atom(self) -> SparsePolynomial:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return SparsePolynomial.constant(val, self.nvars)
        if kind == "var":
            self.take()
            return SparsePolynomial.variable(val, self.nvars)
        if kind == "op" and val == "(":
            self.take()
            p = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.take()
            return p
        self.fail("expected a number, variable or '('" if kind != "end" else "unexpected end of input")


def parse_polynomial(text: str, names: Sequence[str]) -> SparsePolynomial:
    """Parse ``text`` as a polynomial in the declared variable ``names``."""
    return _Parser(text, names).parse()


def _format_coeff(c) -> str:
    return str(c) if not isinstance(c, Fraction) else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: SparsePolynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in p.items():
        mono = "*".join(names[i] + (f"^{e}" if e > 1 else "") for i, e in enumerate(exps) if e)
        mag = -c if c < 0 else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_format_coeff(mag)}*{mono}"
        else:
            body = _format_coeff(mag)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# presentation documents

@dataclass(frozen=True)
class PresentationDocument:
    presentation: AlgebraPresentation
    colon: ColonData | None = None

    @property
    def names(self) -> tuple[str, ...]:
        return self.presentation.names


def _require(doc: dict, key: str, kind: type):
    if key not in doc:
        raise PresentationError(f"missing field {key!r}")
    val = doc[key]
    if not isinstance(val, kind) or isinstance(val, bool):
        raise PresentationError(f"field {key!r} must be {kind.__name__}")
    return val


def _parse_gen(text, names, label: str) -> SparsePolynomial:
    if not isinstance(text, str):
        raise PresentationError(f"{label} must be a string")
    try:
        return parse_polynomial(text, names)
    except PolynomialSyntaxError as exc:
        raise PolynomialSyntaxError(f"{label}: {exc.reason}", exc.text, exc.position) from None


def document_from_dict(doc: dict) -> PresentationDocument:
    if not isinstance(doc, dict):
        raise PresentationError("presentation document must be a JSON object")
    kind = _require(doc, "kind", str)
    names = _require(doc, "variables", list)
    if not all(isinstance(x, str) and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", x) for x in names):
        raise PresentationError("variables must be identifiers")
    if len(set(names)) != len(names):
        raise PresentationError("duplicate variable names")
    n = _require(doc, "n", int)
    degrees = _require(doc, "degrees", list)
    if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in degrees):
        raise PresentationError("degrees must be non-negative integers")
    gens_text = doc.get("generators", [])
    if not isinstance(gens_text, list):
        raise PresentationError("generators must be a list of strings")
    try:
        if kind == "rees":
            if len(names) != n:
                raise PresentationError(f"rees document declares n={n} but {len(names)} variables")
            gens = [_parse_gen(g, names, f"generator {j + 1}") for j, g in enumerate(gens_text)]
            pres = ReesPresentation(n, gens, degrees, names=names)
        elif kind == "quotient":
            if len(names) != n + len(degrees):
                raise PresentationError(
                    f"quotient document needs n + r = {n + len(degrees)} variables, got {len(names)}")
            gens = [_parse_gen(g, names, f"generator {j + 1}") for j, g in enumerate(gens_text)]
            pres = QuotientPresentation(n, degrees, gens, names=names)
        else:
            raise PresentationError(f"unknown kind {kind!r}")
        if "r" in doc and doc["r"] != pres.r:
            raise PresentationError(f"declared r={doc['r']} does not match {pres.r}")
    except (GradingError, PresentationError):
        raise
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    colon = None
    if doc.get("colon") is not None:
        colon = _parse_colon(doc["colon"], pres)
    return PresentationDocument(pres, colon)


def _parse_colon(block, pres: AlgebraPresentation) -> ColonData:
    if pres.kind != "rees":
        raise PresentationError("a colon-data block needs a rees presentation")
    if not isinstance(block, list):
        raise PresentationError("colon block must be a list")
    names = pres.names
    entries = []
    for q, item in enumerate(block, 1):
        if not isinstance(item, dict):
            raise PresentationError(f"colon entry {q} must be an object")
        gens = [_parse_gen(g, names, f"colon entry {q} generator {k + 1}")
                for k, g in enumerate(item.get("generators", []))]
        entries.append(ColonEntry(gens, _require(item, "dim", int), _require(item, "mult", int)))
    if len(entries) != pres.r:
        raise PresentationError(f"colon block has {len(entries)} entries for {pres.r} generators")
    try:
        return ColonData(pres.n, pres.degrees, entries)
    except InvalidColonData as exc:
        raise PresentationError(str(exc)) from None


def parse_presentation(text: str) -> PresentationDocument:
    """Parse a JSON presentation document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return document_from_dict(doc)


def document_to_dict(document: PresentationDocument) -> dict:
    pres = document.presentation
    names = pres.names or _default_names(pres)
    out = {
        "kind": pres.kind,
        "variables": list(names),
        "n": pres.n,
        "r": pres.r,
        "degrees": list(pres.degrees),
        "generators": [format_polynomial(g, names) for g in pres.generators],
    }
    if document.colon is not None:
        out["colon"] = [{"generators": [format_polynomial(g, names) for g in e.generators],
                         "dim": e.dim, "mult": e.mult} for e in document.colon.entries]
    return out


def _default_names(pres: AlgebraPresentation) -> tuple[str, ...]:
    if pres.kind == "rees":
        return tuple(f"x{i + 1}" for i in range(pres.n))
    return tuple(f"X{i + 1}" for i in range(pres.n)) + tuple(f"Y{j + 1}" for j in range(pres.r))


def emit_presentation(document: PresentationDocument) -> str:
    return json.dumps(document_to_dict(document), indent=2) + "\n"


# reports

def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


def _unnum(x):
    if isinstance(x, str):
        return Fraction(x)
    return x


def report_to_dict(value) -> dict:
    from .catalog import CatalogReport
    from .diagonal import EmbeddedDegreeCheck, UnivariateFit
    from .polyfit import BinomialBasisPolynomial

    if isinstance(value, MixedMultReport):
        return {"type": "mixedmult", "s": value.s, "deg_u": value.deg_u,
                "e": [_num(x) for x in value.e], "rho": value.rho}
    if isinstance(value, HilbertTable):
        return {"type": "table", "presentation": value.presentation_id,
                "cells": [[u, v, h] for u, v, h in value.rows()],
                "skipped": [[u, v, why] for (u, v), why in sorted(value.skipped.items())]}
    if isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], BinomialBasisPolynomial):
        p, region = value
        return {"type": "fit", "d": p.d, "u0": region.u0, "v0": region.v0,
                "coeffs": [[i, j, _num(c)] for (i, j), c in sorted(p.coeffs.items())]}
    if isinstance(value, UnivariateFit):
        return {"type": "univariate", "newton": [_num(c) for c in value.coeffs],
                "degree": value.degree, "multiplicity": _num(value.multiplicity), "v0": value.v0}
    if isinstance(value, EmbeddedDegreeCheck):
        return {"type": "embedded_check", "fitted": value.fitted, "formula": value.formula,
                "equal": value.equal, "degree_matches": value.degree_matches}
    if isinstance(value, TopCoefficients):
        return {"type": "top", "degree": value.degree, "e": list(value.sequence())}
    if isinstance(value, CatalogReport):
        return {"type": "catalog", "passed": value.passed,
                "records": [{"name": r.name, "passed": r.passed,
                             "checks": [{"check": c.name, "expected": _jsonable(c.expected),
                                         "actual": _jsonable(c.actual), "passed": c.passed}
                                        for c in r.checks]}
                            for r in value.records]}
    if isinstance(value, (int, Fraction)):
        return {"type": "value", "value": _num(value)}
    if isinstance(value, (list, tuple)) and all(isinstance(x, (int, Fraction)) for x in value):
        return {"type": "sequence", "values": [_num(x) for x in value]}
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    return _num(x)


def report_from_dict(doc: dict):
    from .diagonal import EmbeddedDegreeCheck, UnivariateFit
    from .polyfit import BinomialBasisPolynomial, FitRegion

    kind = doc.get("type")
    if kind == "mixedmult":
        return MixedMultReport(doc["s"], doc["deg_u"], tuple(_unnum(x) for x in doc["e"]))
    if kind == "table":
        t = HilbertTable(presentation_id=doc.get("presentation", ""))
        for u, v, h in doc["cells"]:
            t.cells[(u, v)] = h
        for u, v, why in doc.get("skipped", []):
            t.skipped[(u, v)] = why
        return t
    if kind == "fit":
        p = BinomialBasisPolynomial({(i, j): _unnum(c) for i, j, c in doc["coeffs"]}, doc["d"])
        return p, FitRegion(doc["d"], doc["u0"], doc["v0"])
    if kind == "univariate":
        return UnivariateFit(tuple(_unnum(c) for c in doc["newton"]), doc["degree"],
                             _unnum(doc["multiplicity"]), doc["v0"])
    if kind == "embedded_check":
        return EmbeddedDegreeCheck(doc["fitted"], doc["formula"], doc["equal"], doc["degree_matches"])
    if kind == "top":
        deg = doc["degree"]
        return TopCoefficients(deg, {(i, deg - i): x for i, x in enumerate(doc["e"])})
    if kind == "value":
        return _unnum(doc["value"])
    if kind == "sequence":
        return tuple(_unnum(x) for x in doc["values"])
    raise ValueError(f"unknown report type {kind!r}")


def _csv_rows(d: dict) -> list[list]:
    kind = d["type"]
    if kind == "table":
        return [["u", "v", "dim"]] + d["cells"]
    if kind == "mixedmult":
        return [["i", "e_i"]] + [[i, x] for i, x in enumerate(d["e"])]
    if kind == "fit":
        return [["i", "j", "c_ij"]] + d["coeffs"]
    if kind == "univariate":
        return [["j", "newton_j"]] + [[j, x] for j, x in enumerate(d["newton"])]
    if kind == "top":
        return [["i", "j", "e_ij"]] + [[i, d["degree"] - i, x] for i, x in enumerate(d["e"])]
    if kind == "sequence":
        return [["i", "value"]] + [[i, x] for i, x in enumerate(d["values"])]
    if kind == "catalog":
        rows = [["record", "check", "expected", "actual", "passed"]]
        for r in d["records"]:
            for c in r["checks"]:
                rows.append([r["name"], c["check"], json.dumps(c["expected"]),
                             json.dumps(c["actual"]), c["passed"]])
        return rows
    return [list(d.keys()), list(d.values())]


def _text(d: dict) -> str:
    kind = d["type"]
    if kind == "mixedmult":
        es = ", ".join(f"e_{i}={x}" for i, x in enumerate(d["e"]))
        return f"s={d['s']} deg_u={d['deg_u']} rho={d['rho']}\n{es}\n"
    if kind == "table":
        lines = [f"{u}\t{v}\t{h}" for u, v, h in d["cells"]]
        lines += [f"skipped ({u}, {v}): {why}" for u, v, why in d["skipped"]]
        return "u\tv\tdim\n" + "\n".join(lines) + "\n"
    if kind == "fit":
        terms = " + ".join(f"({c})*C(w,{i})*C(v,{j})" for i, j, c in d["coeffs"]) or "0"
        return f"w = u - {d['d']}*v, region u >= {d['d']}*v + {d['u0']}, v >= {d['v0']}\nP = {terms}\n"
    if kind == "univariate":
        return (f"degree={d['degree']} multiplicity={d['multiplicity']} v0={d['v0']}\n"
                f"newton={d['newton']}\n")
    if kind == "catalog":
        out = []
        for r in d["records"]:
            out.append(f"{'PASS' if r['passed'] else 'FAIL'} {r['name']}")
            for c in r["checks"]:
                if not c["passed"]:
                    out.append(f"    {c['check']}: expected {c['expected']}, got {c['actual']}")
        out.append("all records pass" if d["passed"] else "some records FAIL")
        return "\n".join(out) + "\n"
    if kind == "top":
        return "\n".join(f"e_{{{i},{d['degree'] - i}}}={x}" for i, x in enumerate(d["e"])) + "\n"
    if kind == "sequence":
        return ", ".join(f"e_{i}={x}" for i, x in enumerate(d["values"])) + "\n"
    return "\n".join(f"{k}={v}" for k, v in d.items() if k != "type") + "\n"


def emit_report(value, fmt: str = "json") -> str:
    d = report_to_dict(value)
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    if fmt == "csv":
        buf = _io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(_csv_rows(d))
        return buf.getvalue()
    if fmt == "text":
        return _text(d)
    raise ValueError(f"unknown format {fmt!r}")


def parse_report(text: str, fmt: str = "json"):
    """Inverse of :func:`emit_report`: every json report, and csv tables."""
    if fmt == "json":
        return report_from_dict(json.loads(text))
    if fmt == "csv":
        rows = list(csv.reader(_io.StringIO(text)))
        if rows and rows[0] == ["u", "v", "dim"]:
            t = HilbertTable()
            for u, v, h in rows[1:]:
                t.cells[(int(u), int(v))] = int(h)
            return t
        raise ValueError("only csv tables can be parsed back")
    raise ValueError(f"format {fmt!r} cannot be parsed")
