"""Single-entry verification pipeline.

``run_suite`` chains every invariant family over a category and a module:
presentation axioms, module coherence, algebra axioms at every base label,
positivity, fixed-point dimensions, and the round trip from reconstructed
components back to the multiplicity data.  Results merge into one
certificate; a failure anywhere surfaces as a failed named check.
"""

from __future__ import annotations

import numpy as np

from .certificate import Certificate
from .modcat import BigradedFunctor, validate_module
from .numkit import DEFAULT_TOL
from .reconstruct import (
    basis_triples,
    build_algebra,
    cp_certificate,
    verify_algebra,
)
from .tensorcat import UNIT_LABEL, CategoryPresentation, verify_presentation

ALL_SUITES = ("presentation", "module", "algebra", "positivity", "fixedpoint", "roundtrip")


def run_suite(cat: CategoryPresentation, mod: BigradedFunctor | None,
              tol: float = DEFAULT_TOL, seed: int = 0,
              suites: tuple[str, ...] = ALL_SUITES,
              require_connected: bool = True) -> Certificate:
    unknown = set(suites) - set(ALL_SUITES)
    if unknown:
        raise ValueError(f"unknown suites: {sorted(unknown)}; valid: {list(ALL_SUITES)}")
    cert = Certificate(subject="suite", tolerance=tol, seed=seed)

    if "presentation" in suites:
        cert.merge(verify_presentation(cat, tol), prefix="cat.")
    if mod is None:
        return cert
    if "module" in suites:
        cert.merge(validate_module(mod, tol, require_connected=require_connected),
                   prefix="mod.")
    if "algebra" in suites or "positivity" in suites:
        for r in range(mod.n_base):
            alg = build_algebra(mod, r)
            if "algebra" in suites:
                cert.merge(verify_algebra(alg, tol, seed), prefix=f"alg{r}.")
            if "positivity" in suites:
                cert.merge(cp_certificate(alg, tol, seed=seed), prefix=f"cp{r}.")
    if "fixedpoint" in suites:
        # the invariant part of each corner is exactly the morphism space
        # between its base objects: one-dimensional on the diagonal, zero off
        ok = True
        for x in range(mod.n_base):
            for y in range(mod.n_base):
                invariant = sum(1 for (a, m, i) in basis_triples(mod, x, y)
                                if a == UNIT_LABEL)
                if invariant != (1 if x == y else 0):
                    ok = False
        cert.add_flag("fixedpoint_dims",
                      "invariant subspace of every corner matches the base morphism space",
                      ok)
    if "roundtrip" in suites:
        ok = True
        for x in range(mod.n_base):
            for y in range(mod.n_base):
                triples = basis_triples(mod, x, y)
                for a in cat.labels:
                    got = sum(1 for (aa, m, i) in triples if aa == a)
                    if got != int(mod.dims[a, x, y]) * cat.dim(a):
                        ok = False
        cert.add_flag("component_roundtrip",
                      "spectral component dimensions re-extract the multiplicity data",
                      ok)
    return cert


def report(cert: Certificate, format: str = "text") -> str:
    if format == "text":
        return cert.to_text()
    if format == "json":
        return cert.to_json()
    raise ValueError(f"unknown report format {format!r}; use 'text' or 'json'")
