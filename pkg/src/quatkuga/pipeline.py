"""Run the full certificate suite for a construction spec."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .config import ConstructionSpec, tau_label
from .exact import ExactComplex, ExactMatrix
from .kuga.action import (
    GammaLambdaElement,
    fiber_isomorphism,
    fiber_isomorphism_report,
    mobius,
    projective_action,
)
from .kuga.data import DegenerateLatticeError, KugaData, check_kuga_data
from .kuga.families import (
    build_elliptic_family,
    build_false_elliptic,
    endomorphism_commutation,
    fiber_product_data,
    shimura_form_identity,
)
from .kuga.periods import complex_structure, fiber_lattice, needs_numeric, period_matrix, riemann_conditions
from .numeric import DEFAULT_BITS
from .orders import (
    FuchsianElement,
    QuatOrder,
    congruence_membership,
    is_maximal,
    reduced_discriminant,
    reduced_words,
    torsion_screen,
    verify_order,
)
from .quaternion import QuaternionAlgebra, classify_algebra, matrix_embedding, ramification_set
from .report import WARNING, CertificateReport, Entry, entry

COCYCLE_RADIUS = 3


def _algebra_entries(B: QuaternionAlgebra, report: CertificateReport) -> bool:
    division, indefinite = classify_algebra(B)
    ram = ramification_set(B)
    ok = division and indefinite
    report.add(entry("algebra.division_indefinite", ok,
                     {"ramification": str(ram), "division": division, "indefinite": indefinite}))
    return ok


def _order_entries(L: QuatOrder, report: CertificateReport) -> bool:
    cert = verify_order(L)
    report.add(entry("order.is_order", cert.is_order, {"violations": cert.violations}))
    if not cert.is_order:
        return False
    disc = reduced_discriminant(L)
    maximal = is_maximal(L)
    w = {"discriminant": disc, "ramified_product": ramification_set(L.algebra).finite_product()}
    report.add(Entry("order.maximal", "pass" if maximal else WARNING, w))
    return True


def _generator_entries(gens, L: QuatOrder | None, N: int, radius: int,
                       report: CertificateReport) -> bool:
    ok = True
    for k, g in enumerate(gens):
        if L is not None:
            inside = L.contains(g.quaternion)
            report.add(entry("gamma.in_order", inside, {"element": str(g)}, (k + 1,)))
            ok &= inside
            if inside and N > 1:
                cong = congruence_membership(g, L, N)
                report.add(entry("gamma.congruence", cong, {"level": N, "element": str(g)}, (k + 1,)))
    found = torsion_screen(list(gens), radius)
    report.add(entry("gamma.torsion_screen", not found,
                     {"radius": radius, "torsion": found[:5]} if found else {"radius": radius}))
    return ok and not found


def _quaternions(B, coords, report) -> list[FuchsianElement] | None:
    out = []
    for k, c in enumerate(coords):
        q = B.element(*c)
        unit = q.nrd() == 1
        report.add(entry("gamma.norm_one", unit, {} if unit else {"nrd": q.nrd()}, (k + 1,)))
        if unit:
            out.append(FuchsianElement.of(q))
    return out if len(out) == len(coords) else None


def _test_point(g: int) -> list[ExactComplex]:
    return [ExactComplex(k + 1, Fraction(-1, k + 2)) for k in range(g)]


def _group_entries(data: KugaData, taus, report: CertificateReport) -> None:
    """Semidirect law, kernel, projective cocycle and factor of automorphy on short words."""
    basis = data.lattice_basis.basis
    nb = len(basis)
    zero = ExactMatrix.zeros(data.g, 2)
    z = _test_point(data.g)
    law_bad = kernel_bad = None
    cocycle_bad = {tau_label(t): None for t in taus}
    automorphy_bad = dict(cocycle_bad)
    exact_taus = [t for t in taus if not needs_numeric(data, t)]
    n_words = 0
    for k, word in enumerate(reduced_words(len(data.gamma_gens), COCYCLE_RADIUS)):
        if not word:
            continue
        n_words += 1
        first, rest = data.word(word[:1]), data.word(word[1:])
        g1 = GammaLambdaElement(first, basis[k % nb])
        g2 = GammaLambdaElement(rest, basis[(k + 1) % nb])
        prod = g1 * g2
        if law_bad is None and prod.block != g1.block @ g2.block:
            law_bad = {"word": [[i + 1, s] for i, s in word]}
        # kernel: (gamma_0)(1_lam)(gamma_0)^-1 = 1_{rho(gamma) lam gamma^-1}, a lattice translation
        whole = data.word(word)
        lam = basis[k % nb]
        conj = GammaLambdaElement(whole, zero) * GammaLambdaElement(data.identity(), lam) \
            * GammaLambdaElement(whole, zero).inverse()
        if kernel_bad is None and not (conj.gamma == data.identity()
                                       and conj.lam == whole.act(lam)
                                       and data.lattice_basis.contains(conj.lam)):
            kernel_bad = {"word": [[i + 1, s] for i, s in word]}
        for tau in exact_taus:
            lbl = tau_label(tau)
            if cocycle_bad[lbl] is None:
                lhs = projective_action(prod, z, tau)
                z2, t2 = projective_action(g2, z, tau)
                if lhs != projective_action(g1, z2, t2):
                    cocycle_bad[lbl] = {"word": [[i + 1, s] for i, s in word]}
            if automorphy_bad[lbl] is None:
                t2 = mobius(rest.matrix, tau)
                lhs = fiber_isomorphism(data, first * rest, tau)
                rhs = fiber_isomorphism(data, first, t2) @ fiber_isomorphism(data, rest, tau)
                if lhs != rhs:
                    automorphy_bad[lbl] = {"word": [[i + 1, s] for i, s in word]}
    report.add(entry("semidirect.law", law_bad is None, law_bad or {"words": n_words}))
    report.add(entry("semidirect.kernel", kernel_bad is None, kernel_bad or {"words": n_words}))
    for tau in taus:
        lbl = tau_label(tau)
        if tau not in exact_taus:
            skip = {"reason": "tau outside the data's quadratic field; exact check skipped"}
            report.add(Entry("action.cocycle", WARNING, skip, (lbl,)))
            continue
        report.add(entry("action.cocycle", cocycle_bad[lbl] is None,
                         cocycle_bad[lbl] or {"words": n_words}, (lbl,)))
        report.add(entry("fiber_isomorphism.automorphy", automorphy_bad[lbl] is None,
                         automorphy_bad[lbl] or {"words": n_words}, (lbl,)))


def _tau_entries(data: KugaData, tau: ExactComplex, bits: int, report: CertificateReport) -> None:
    lbl = tau_label(tau)
    cs = complex_structure(tau)
    I2 = ExactMatrix.identity(2)
    square = cs.J @ cs.J == -I2 and cs.J.det() == 1
    report.add(entry("complex_structure.square", square, {"J": cs.J}, (lbl,)))
    report.extend(riemann_conditions(data, tau, bits, label=lbl))
    if needs_numeric(data, tau):
        skip = {"reason": "tau outside the data's quadratic field; exact check skipped"}
        for name in ("complex_structure.equivariance", "fiber_lattice.independent",
                     "period.relations"):
            report.add(Entry(name, WARNING, skip, (lbl,)))
        return
    for k, gen in enumerate(data.generators()):
        lhs = complex_structure(mobius(gen.matrix, tau)).J
        rhs = gen.matrix @ cs.J @ gen.matrix.inverse()
        report.add(entry("complex_structure.equivariance", lhs == rhs, {} if lhs == rhs else
                         {"lhs": lhs, "rhs": rhs}, (lbl, k + 1)))
        fr = fiber_isomorphism_report(data, gen, tau)
        report.add(entry("fiber_isomorphism.lattice", fr.pop("ok"), fr, (lbl, k + 1)))
    try:
        fiber_lattice(data, tau)
        report.add(entry("fiber_lattice.independent", True, {}, (lbl,)))
    except DegenerateLatticeError as exc:
        report.add(entry("fiber_lattice.independent", False, {"reason": str(exc), **exc.witness},
                         (lbl,)))
        return
    try:
        pm = period_matrix(data, tau)
    except ValueError as exc:
        report.add(entry("period.relations", False, {"reason": str(exc)}, (lbl,)))
        return
    rel = pm.bilinear_relations()
    ok = rel["first_zero"] and rel["positive"]
    report.add(entry("period.relations", ok,
                     {"deltas": list(pm.deltas), "period_matrix": pm.pi, "minors": rel["minors"]},
                     (lbl,)))


def _kuga_entries(data: KugaData, spec: ConstructionSpec, bits: int,
                  report: CertificateReport) -> None:
    checks = check_kuga_data(data)
    report.extend(checks)
    if any(e.name == "kuga.lattice_rank" and not e.ok for e in checks):
        return
    if any(e.name == "kuga.E_integral" and not e.ok for e in checks):
        return
    for tau in spec.taus:
        _tau_entries(data, tau, bits, report)
    _group_entries(data, spec.taus, report)
    for flag in data.flags:
        report.add(Entry("kuga.flag", WARNING, {"flag": flag}))


def _false_elliptic(spec: ConstructionSpec, bits: int, report: CertificateReport) -> None:
    B = QuaternionAlgebra(spec.a, spec.b)
    if not _algebra_entries(B, report):
        return
    L = QuatOrder.from_coordinates(B, spec.order_basis)
    if not _order_entries(L, report):
        return
    gens = _quaternions(B, spec.generators, report)
    if gens is None or not _generator_entries(gens, L, spec.congruence_level, spec.word_ball, report):
        return
    data = build_false_elliptic(B, L, gens, spec.scale, radius=spec.word_ball)
    report.add(entry("false_elliptic.scale", True,
                     {"scale": data.meta["scale"], "denominator_lcm": data.meta["denominator_lcm"],
                      "E1": data.meta["E1"]}))
    emb = matrix_embedding(B)
    images = [emb(e) for e in L.basis]
    bad = None
    for i, j in itertools.product(range(4), repeat=2):
        lhs, rhs, eq = shimura_form_identity(B, images[i], images[j])
        if not eq:
            bad = {"pair": [i + 1, j + 1], "lhs": lhs, "rhs": rhs}
            break
    report.add(entry("shimura.identity", bad is None, bad or {"pairs": 16}))
    if spec.S_override is not None:
        data = data.with_S(spec.S_override)
    base = data
    for k, beta in enumerate(L.basis):
        report.extend(endomorphism_commutation(B, base, beta, label=f"basis{k + 1}"))
    _kuga_entries(fiber_product_data(data, spec.copies), spec, bits, report)


def _elliptic(spec: ConstructionSpec, bits: int, report: CertificateReport) -> None:
    data = build_elliptic_family(spec.level)
    _generator_entries(list(data.gamma_gens), None, 1, spec.word_ball, report)
    if spec.S_override is not None:
        data = data.with_S(spec.S_override)
    _kuga_entries(fiber_product_data(data, spec.copies), spec, bits, report)


def _raw(spec: ConstructionSpec, bits: int, report: CertificateReport) -> None:
    B = QuaternionAlgebra(spec.a, spec.b)
    gens = _quaternions(B, spec.generators, report)
    if gens is None or not _generator_entries(gens, None, 1, spec.word_ball, report):
        return
    S = spec.S_override if spec.S_override is not None else spec.S
    try:
        data = KugaData(spec.raw["g"], gens, spec.rho, spec.lattice, S)
    except ValueError as exc:
        report.add(entry("kuga.shapes", False, {"reason": str(exc)}))
        return
    _kuga_entries(fiber_product_data(data, spec.copies), spec, bits, report)


def certify(spec: ConstructionSpec, bits: int = DEFAULT_BITS) -> CertificateReport:
    report = CertificateReport()
    {"false-elliptic": _false_elliptic, "elliptic": _elliptic, "raw-kuga": _raw}[spec.mode](
        spec, bits, report)
    return report
