"""Registry of worked presentations with known answers, and the runner that checks them."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources

from .closed_forms import (
    build_initial_ideal,
    dseq_hilbert,
    dseq_mixed_mult,
    embedded_degree,
    minors_mixed_mult,
    prop13_leading,
    regseq_mixed_mult,
    teissier_dseq,
)
from .diagonal import DiagonalSpec, diagonal_fit_source
from .io import PresentationDocument, document_from_dict, parse_polynomial
from .oracle import DEFAULT_CONFIG, CellBudgetExceeded, CellOracle, OracleConfig, quotient_bigraded_hilbert
from .polyfit import (
    DEFAULT_BUDGET,
    BinomialBasisPolynomial,
    FitRegion,
    StabilizationError,
    default_degree_bound,
    extract_report,
    fit_bivariate,
)
from .report import MixedMultReport

PIECEWISE_RANGE = 12


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class ExampleRecord:
    name: str
    description: str
    document: PresentationDocument
    expected: dict
    fit_source: str = "oracle"
    degree_bound: int | None = None

    def __post_init__(self):
        exp = self.expected
        if "s" in exp and "rdim" in exp and exp["s"] != exp["rdim"] - 2:
            raise CatalogError(f"{self.name}: s must equal rdim - 2")
        if "deg_u" in exp and "x_dim" in exp and exp["deg_u"] != exp["x_dim"] - 1:
            raise CatalogError(f"{self.name}: deg_u must equal x_dim - 1")
        if self.fit_source not in ("oracle", "dseq"):
            raise CatalogError(f"{self.name}: unknown fit source {self.fit_source!r}")
        if self.fit_source == "dseq" and self.document.colon is None:
            raise CatalogError(f"{self.name}: fit source dseq needs colon data")

    @property
    def presentation(self):
        return self.document.presentation

    @property
    def bound(self) -> int:
        return default_degree_bound(self.presentation) if self.degree_bound is None else self.degree_bound

    def source(self, config: OracleConfig = DEFAULT_CONFIG):
        if self.fit_source == "dseq":
            cd = self.document.colon
            cache: dict = {}

            def cell(u, v):
                if (u, v) not in cache:
                    cache[(u, v)] = dseq_hilbert(cd, u, v, config)
                return cache[(u, v)]
            return cell
        return CellOracle(self.presentation, config)


def record_from_dict(doc: dict) -> ExampleRecord:
    fit = doc.get("fit", {})
    return ExampleRecord(
        name=doc["name"],
        description=doc.get("description", ""),
        document=document_from_dict(doc["presentation"]),
        expected=doc.get("expected", {}),
        fit_source=fit.get("source", "oracle"),
        degree_bound=fit.get("degree_bound"),
    )


def load_catalog(path=None) -> list[ExampleRecord]:
    if path is None:
        text = resources.files("bihilbert").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    records = [record_from_dict(d) for d in json.loads(text)["records"]]
    names = [r.name for r in records]
    if len(set(names)) != len(names):
        raise CatalogError("duplicate record names")
    return records


def get_record(name: str, records: list[ExampleRecord] | None = None) -> ExampleRecord:
    for rec in records or load_catalog():
        if rec.name == name:
            return rec
    raise KeyError(f"no catalog record named {name!r}")


@dataclass(frozen=True)
class Check:
    name: str
    expected: object
    actual: object
    passed: bool


@dataclass
class RecordResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    report: MixedMultReport | None = None
    fit: tuple[BinomialBasisPolynomial, FitRegion] | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected, actual) -> None:
        self.checks.append(Check(name, expected, actual, expected == actual))


@dataclass
class CatalogReport:
    records: list[RecordResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def __getitem__(self, name: str) -> RecordResult:
        return next(r for r in self.records if r.name == name)


def _closed_form(rec: ExampleRecord) -> tuple | None:
    kind = rec.expected.get("closed_form")
    pres = rec.presentation
    if kind == "prop13":
        return prop13_leading(pres.n, pres.degrees).sequence()
    if kind == "regseq":
        return regseq_mixed_mult(pres.n, 1, pres.degrees).e
    if kind == "minors":
        return minors_mixed_mult(pres.r).e
    if kind is None:
        return None
    raise CatalogError(f"{rec.name}: unknown closed form {kind!r}")


def verify_record(rec: ExampleRecord, config: OracleConfig = DEFAULT_CONFIG,
                  budget: int = DEFAULT_BUDGET, fitted: dict | None = None) -> RecordResult:
    """Table, fit, extract, then compare with every expected field of ``rec``."""
    res = RecordResult(rec.name)
    exp = rec.expected
    pres = rec.presentation
    source = rec.source(config)

    for piece in exp.get("piecewise", []):
        names = ("u", "v")
        cond = parse_polynomial(piece["geq_zero"], names)
        value = parse_polynomial(piece["value"], names)
        bad = [(u, v) for u in range(PIECEWISE_RANGE + 1) for v in range(PIECEWISE_RANGE + 1)
               if cond.evaluate((u, v)) >= 0 and source(u, v) != value.evaluate((u, v))]
        res.add(f"piecewise {piece['value']} where {piece['geq_zero']} >= 0", [], bad)

    try:
        fit = fit_bivariate(source, pres.d_max, rec.bound, budget)
    except (StabilizationError, CellBudgetExceeded) as exc:
        res.add("fit", "validated", f"failed: {exc}")
        return res
    res.fit = fit
    rep = extract_report(fit[0])
    res.report = rep
    if fitted is not None:
        fitted[rec.name] = rep

    for key in ("s", "deg_u", "rho"):
        if key in exp:
            res.add(key, exp[key], getattr(rep, key))
    if "e" in exp:
        res.add("e", tuple(exp["e"]), rep.e)
    if "rdim" in exp:
        res.add("s = rdim - 2", exp["rdim"] - 2, rep.s)
    if "x_dim" in exp:
        res.add("deg_u = x_dim - 1", exp["x_dim"] - 1, rep.deg_u)
    res.add("integral e", True, rep.is_integral())
    if rep.rho >= 0:
        res.add("e_rho > 0", True, rep.e[rep.rho] > 0)
    cf = _closed_form(rec)
    if cf is not None:
        res.add(f"closed form {exp['closed_form']}", tuple(cf), rep.e)
    if "same_e_as" in exp:
        other = (fitted or {}).get(exp["same_e_as"])
        if other is None:
            other = verify_record(get_record(exp["same_e_as"]), config, budget).report
        res.add(f"e equals {exp['same_e_as']}", other.e if other else None, rep.e)

    if pres.kind == "rees":
        # polynomial ambient ring, nonzero ideal: positive height, e(A) = 1
        res.add("e_s = 1", 1, rep.e[rep.s] if rep.s >= 0 else None)
        res.add("deg_u = s", rep.s, rep.deg_u)
        fallback = exp.get("diagonal_fallback") == "dseq"
        for c, e in ((pres.d_max + 1, 1), (2 * pres.d_max + 1, 2)):
            spec = DiagonalSpec(c, e)
            label = f"diagonal ({c},{e})"
            try:
                try:
                    dfit = diagonal_fit_source(source, spec, rec.bound, budget)
                except CellBudgetExceeded:
                    if not fallback:
                        raise
                    # the decomposition is checked against the oracle below
                    dfit = diagonal_fit_source(
                        ExampleRecord(rec.name, "", rec.document, {}, "dseq").source(config),
                        spec, rec.bound, budget)
                    label += " via decomposition"
            except (StabilizationError, CellBudgetExceeded) as exc:
                res.add(label, "validated", f"failed: {exc}")
                continue
            res.add(f"{label} degree", rep.s, dfit.degree)
            res.add(f"{label} multiplicity", embedded_degree(rep, c, e), dfit.multiplicity)

    cd = rec.document.colon
    if cd is not None:
        res.add("d-sequence formula", dseq_mixed_mult(cd).e, rep.e)
        if "teissier" in exp:
            res.add("teissier", tuple(exp["teissier"]), teissier_dseq(cd))
        box = exp.get("initial_ideal")
        if box:
            jstar = build_initial_ideal(cd)
            oracle = CellOracle(pres, config)
            bad = []
            for v in range(box["vmax"] + 1):
                for u in range(box["umax"] + 1):
                    a = oracle(u, v)
                    b = dseq_hilbert(cd, u, v, config)
                    c = quotient_bigraded_hilbert(jstar, u, v, config)
                    if not a == b == c:
                        bad.append((u, v, a, b, c))
            res.add("rees = decomposition = initial ideal", [], bad)
    return res


def run_catalog(records: list[ExampleRecord] | None = None, config: OracleConfig = DEFAULT_CONFIG,
                budget: int = DEFAULT_BUDGET, names: list[str] | None = None) -> CatalogReport:
    records = records if records is not None else load_catalog()
    if names:
        missing = set(names) - {r.name for r in records}
        if missing:
            raise KeyError(f"unknown records {sorted(missing)}")
        records = [r for r in records if r.name in names]
    # records referenced by others go first so their fits are reused
    refs = {r.expected.get("same_e_as") for r in records}
    ordered = [r for r in records if r.name in refs] + [r for r in records if r.name not in refs]
    fitted: dict = {}
    results = {r.name: verify_record(r, config, budget, fitted) for r in ordered}
    return CatalogReport([results[r.name] for r in records])
