"""Pipeline drivers behind the CLI commands; every driver returns a JSON-ready report dict."""

from __future__ import annotations

import json
import random
import time

from ..gradedlin import is_minimal
from ..instances import DegreeProfile, random_bmatrix
from ..normalform import (BMatrix, build_curve_ideal, check_good_residual_equivalences, check_hp2,
                          extract_triple, is_curve, maximal_minors_of_M, verify_expected_residual)
from ..polycore import Ideal, hilbert_function, ring_R, ring_S, saturation_check
from ..polycore.matrix import minors
from ..raomodule import (annihilator_check, check_self_duality, construct_curve_from_module,
                         presentation_shape_check, duality_bridge, minimal_generator_count,
                         minimal_relation_count, rao_function, rao_presentation)
from ..resolution import (betti_table, buchsbaum_eisenbud_certify, build_resolution, dual_cokernel,
                          resolution_hilbert_function, resolution_hilbert_polynomial)
from .instance import InstanceFile, ModuleFile, module_matrix

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
# verdicts every full report carries, in display order
CORE_VERDICTS = ("residual", "curve", "exactness", "minimality", "duality", "annihilator")


def verdict(ok: bool | None, reason: str = "") -> dict:
    if ok is None:
        return {"status": SKIPPED, "reason": reason}
    return {"status": PASS if ok else FAIL, "reason": "" if ok else reason}


def skipped(reason: str) -> dict:
    return verdict(None, reason)


def all_pass(report: dict) -> bool:
    return all(v["status"] != FAIL for v in report["verdicts"].values())


class _Timer:
    def __init__(self):
        self.times: dict[str, float] = {}

    def run(self, name, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.times[name] = round(time.perf_counter() - t0, 4)


def _jsonable_table(table: dict) -> dict:
    return {str(i): {str(t): m for t, m in row.items()} for i, row in table.items()}


def _verify(b: BMatrix, stages: set[str], oracle: bool) -> dict:
    """Shared pipeline; ``stages`` picks among residual/invariants/resolution/rao."""
    T = _Timer()
    v: dict[str, dict] = {}
    out: dict = {"verdicts": v}
    c = T.run("build", build_curve_ideal, b)

    residual = T.run("residual", verify_expected_residual, c)
    v["residual"] = verdict(residual, "J : x != (x, p) or J + (x) != (x, p h I_Z)")
    out["equivalences"] = check_good_residual_equivalences(c).as_dict()
    if residual:
        v["hp2"] = verdict(check_hp2(c, verified=True), "h p^2 is not in J")
    if "invariants" in stages:
        v["saturation"] = verdict(T.run("saturation", saturation_check, c.J), "J is not saturated")

    if b.s == 0:
        reason = "s = 0: no residual points, the curve is aCM"
        v["curve"] = skipped(reason)
        names = (("exactness", "minimality") if "resolution" in stages else ()) + (
            ("duality", "annihilator") if "rao" in stages else ())
        for name in names:
            v[name] = skipped(reason)
        out["invariants"] = {"d": b.d, "delta": b.delta, "deg_h": b.deg_h, "deg_Z": 0,
                             "genus": extract_triple(c).genus}
        out["timing"] = T.times
        return out

    curve = T.run("curve", is_curve, b)
    v["curve"] = verdict(curve, "I_s(M) not irrelevant")
    if "invariants" in stages:
        tri = T.run("invariants", extract_triple, c)
        out["invariants"] = {"d": tri.d, "delta": tri.delta, "deg_h": tri.deg_h, "deg_Z": tri.deg_Z,
                             "genus": tri.genus}

    if "resolution" in stages:
        if not residual:
            v["exactness"] = skipped("needs the expected residual sequence")
            v["minimality"] = skipped("needs the expected residual sequence")
        else:
            r = T.run("resolution", build_resolution, c, check=False)
            cert = T.run("certificate", buchsbaum_eisenbud_certify, r)
            v["exactness"] = verdict(cert.passed, "Buchsbaum-Eisenbud conditions fail")
            minimal = is_minimal(r.complex)
            v["minimality"] = verdict(minimal, "a map has a unit entry")
            out["certificate"] = cert.as_dict()
            out["resolution"] = {"terms": [list(t) for t in r.terms], "signs": r.sign_pattern()}
            if minimal:
                out["betti"] = _jsonable_table(betti_table(r))
            if curve and "invariants" in stages:
                hp = resolution_hilbert_polynomial(r)
                inv = out["invariants"]
                v["hilbert_polynomial"] = verdict(
                    hp == (inv["d"], inv["genus"]),
                    f"resolution gives (d, genus) = {hp}, invariants give {(inv['d'], inv['genus'])}")
            if oracle:
                top = max(max(t) for t in r.terms)
                bad = [n for n in range(top, top + 4)
                       if T.run(f"oracle_{n}", hilbert_function, c.J, n, method="linear")
                       != resolution_hilbert_function(r, n)]
                v["oracle"] = verdict(not bad, f"brute-force Hilbert function differs at n = {bad}")

    if "rao" in stages:
        pres = rao_presentation(b, allow_infinite=True)
        rho = T.run("rao", rao_function, pres)
        out["rao"] = {"values": {str(j): n for j, n in rho.as_dict().items()},
                      "window": list(rho.window), "finite": rho.finite, "bound": rho.bound}
        if not rho.finite:
            out["rao"]["flag"] = "infinite length"
        if not curve:
            why = "not a curve: the Rao module has infinite length"
            v["duality"] = skipped(why)
            v["annihilator"] = skipped(why)
        else:
            ok = check_self_duality(rho, b.d)
            if residual and "resolution" in stages:
                bridge = T.run("bridge", duality_bridge, rho, dual_cokernel(r))
                ok = ok and all(a == e for a, e in bridge.values())
            v["duality"] = verdict(ok, "rho(j) != rho(d-2-j) or the dual module disagrees")
            ann = T.run("annihilator", annihilator_check, pres, rho)
            v["annihilator"] = verdict(ann.passed, f"failing degrees S={ann.failing_S} R={ann.failing_R}")
            gens = minimal_generator_count(pres)
            v["generators"] = verdict(gens == b.s, f"{gens} minimal generators, expected {b.s}")
            if b.s == 1:
                rels = minimal_relation_count(pres)
                v["relations"] = verdict(rels == 4, f"{rels} minimal relations, expected 4")
    out["timing"] = T.times
    return out


def _with_instance(inst: InstanceFile, body: dict, command: str) -> dict:
    return {"command": command, "instance": inst.as_dict(), **body}


def run_verify(inst: InstanceFile, oracle: bool = False) -> dict:
    b = inst.to_bmatrix()
    return _with_instance(inst, _verify(b, {"invariants", "resolution", "rao"}, oracle), "verify")


def run_resolve(inst: InstanceFile, oracle: bool = False) -> dict:
    b = inst.to_bmatrix()
    return _with_instance(inst, _verify(b, {"resolution"}, oracle), "resolve")


def run_rao(inst: InstanceFile, oracle: bool = False) -> dict:
    b = inst.to_bmatrix()
    return _with_instance(inst, _verify(b, {"rao"}, oracle), "rao")


def random_instance(s: int, profile: str, seed: int, prime: int | None = None) -> InstanceFile:
    """Deterministic in ``(s, profile, seed, prime)``; raises ``ProfileError`` on bad profiles."""
    prof = DegreeProfile.parse(profile, s)
    ring = ring_S(prime) if prime else ring_S()
    b = random_bmatrix(prof, random.Random(seed), ring)
    return InstanceFile.from_bmatrix(b, seed)


def run_random(s: int, profile: str, seed: int, prime: int | None = None, oracle: bool = False):
    inst = random_instance(s, profile, seed, prime)
    report = run_verify(inst, oracle)
    report["command"] = "random"
    report["profile"] = profile
    return inst, report


def run_from_module(mf: ModuleFile, oracle: bool = False):
    """Raises ``ValueError`` naming the failed clause when the shape check rejects ``M``."""
    M = module_matrix(mf)
    S = ring_S(mf.p)
    b = construct_curve_from_module(M, seed=mf.seed, ring=S)
    inst = InstanceFile.from_bmatrix(b, mf.seed)
    report = run_verify(inst, oracle)
    report["command"] = "from-module"
    report["module"] = {"M": mf.M, "seed": mf.seed}
    s = len(M)
    given = maximal_minors_of_M(b)
    original = Ideal(S, [m for m in minors(M, s, S) if m])
    report["verdicts"]["round_trip"] = verdict(given == original, "I_s(M) of the constructed curve differs")
    return inst, report


def shape_reasons(mf: ModuleFile) -> list[str]:
    M = module_matrix(mf)
    R = ring_R(mf.p)
    s = len(M)
    cand = [[R.var("x") if i == k else R.zero() for k in range(s)] + [e.to_ring(R) for e in row]
            for i, row in enumerate(M)]
    return presentation_shape_check(cand, ring=R).reasons


# -- machine-readable reports ---------------------------------------------------
def emit_report(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def parse_report(text: str) -> dict:
    return json.loads(text)


def deterministic_part(report: dict) -> dict:
    """The report without wall-clock timing."""
    return {k: v for k, v in report.items() if k != "timing"}


def summarize(report: dict) -> str:
    lines = [f"{report['command']}: {'PASS' if all_pass(report) else 'FAIL'}"]
    inv = report.get("invariants")
    if inv:
        lines.append("  " + "  ".join(f"{k}={inv[k]}" for k in ("d", "delta", "deg_h", "deg_Z", "genus")))
    v = report["verdicts"]
    order = [k for k in CORE_VERDICTS if k in v] + sorted(k for k in v if k not in CORE_VERDICTS)
    for k in order:
        st = v[k]["status"]
        reason = f"  ({v[k]['reason']})" if v[k]["reason"] else ""
        lines.append(f"  {k:<18} {st}{reason}")
    if "betti" in report:
        for i, row in sorted(report["betti"].items()):
            lines.append(f"  F_{int(i) + 1}: " + " + ".join(f"R(-{t})^{m}" for t, m in row.items()))
    if "rao" in report:
        rao = report["rao"]
        vals = ", ".join(f"{j}:{n}" for j, n in rao["values"].items())
        lines.append(f"  rho = {{{vals}}}" + ("" if rao["finite"] else "  [infinite length]"))
    return "\n".join(lines)
