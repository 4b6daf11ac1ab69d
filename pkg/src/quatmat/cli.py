"""Command-line surface: one binary, JSON in, JSON out.

Exit codes: 0 success, 1 malformed input, 2 domain error (singular
matrix, rejected solution, ...). Domain errors print a machine-readable
object such as {"error": "singular", "rank": k}. Output is one JSON
document per invocation with sorted keys, so identical requests (and
seeds) produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from random import Random

from . import generators as gen
from . import jsonio
from .eigen import (
    EigenPair,
    NotDiagonalizableError,
    conjugate_eigen,
    diagonalize_via,
    eigen_check,
    eigen_residual,
    is_matrix_eigenvalue,
    pair_eigen_check,
    scaling_preserves,
    spectrum_of_construction,
)
from .matrices import (
    Matrix,
    NoSolutionError,
    ProductKind,
    ShapeError,
    Side,
    SingularMatrixError,
    inverse,
    matrix_power,
    mul,
    rank,
)
from .ode import (
    RejectedSolutionError,
    SolutionForm,
    UnsupportedModeError,
    build_solution,
    conj_exp_residuals,
    exp_scalar,
    exp_scalar_series,
    residual_grid,
    rk4_integrate,
    solution_residual,
)
from .quasidet import UNDEFINED, quasidet_matrix
from .scalars import DEFAULT_TOL, Quaternion, in_center


def _load_payload(arg):
    if arg is None:
        raise jsonio.InputFormatError("this subcommand needs a JSON payload")
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _kind(args):
    return ProductKind(args.kind)


def _emit(obj):
    sys.stdout.write(json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n")


def _unify(matrices, scalars):
    """Promote every parsed value to one scalar type (reals lift to quaternions)."""
    flat = [e for m in matrices for e in m.entries()] + list(scalars)
    lifted = jsonio._lift(flat)
    out = []
    idx = 0
    for m in matrices:
        n2 = m.n_rows * m.n_cols
        chunk = lifted[idx:idx + n2]
        out.append(Matrix([chunk[i * m.n_cols:(i + 1) * m.n_cols]
                           for i in range(m.n_rows)]))
        idx += n2
    return out, lifted[idx:]


# -- subcommand handlers -------------------------------------------------------


def _cmd_mul(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    b = jsonio.matrix_from_json(payload["b"], args.mode)
    return {"result": jsonio.matrix_to_json(mul(a, b, _kind(args)))}


def _cmd_power(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    k = payload["k"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 0:
        raise jsonio.InputFormatError("power exponent must be a non-negative integer")
    return {"result": jsonio.matrix_to_json(matrix_power(a, k, _kind(args)))}


def _cmd_invert(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    return {"result": jsonio.matrix_to_json(inverse(a, _kind(args), args.tol))}


def _cmd_rank(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    return {"rank": rank(a, _kind(args), args.tol)}


def _cmd_quasidet(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    table = quasidet_matrix(a, _kind(args), args.tol)
    entries = [["undefined" if e is UNDEFINED else jsonio.scalar_to_json(e)
                for e in row] for row in table]
    return {"result": {"rows": a.n_rows, "cols": a.n_cols, "entries": entries}}


def _cmd_eig_verify(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    pair = jsonio.eigen_pair_from_json(payload["pair"], args.mode, a.n_rows)
    (a, vector), (value,) = _unify([a, pair.vector], [pair.value])
    pair = EigenPair(value, vector, pair.side, pair.kind)
    ok = eigen_check(a, pair, args.tol)
    return {"pass": ok, "residual": eigen_residual(a, pair)}


def _cmd_diagonalize(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    u = jsonio.matrix_from_json(payload["u"], args.mode)
    side = jsonio.side_from_json(payload["side"])
    d = diagonalize_via(a, u, _kind(args), side, args.tol)
    return {"result": jsonio.matrix_to_json(d)}


def _cmd_spectrum(args, payload):
    u = jsonio.matrix_from_json(payload["u"], args.mode)
    values = [jsonio.scalar_from_json(v, args.mode) for v in payload["d"]]
    (u,), values = _unify([u], values)
    report = spectrum_of_construction(u, values, _kind(args), args.tol)
    return jsonio.spectrum_report_to_json(report)


def _cmd_conjugate(args, payload):
    a = jsonio.matrix_from_json(payload["a"], args.mode)
    pair = jsonio.eigen_pair_from_json(payload["pair"], args.mode, a.n_rows)
    c = jsonio.scalar_from_json(payload["c"], args.mode)
    (a, vector), (value, c) = _unify([a, pair.vector], [pair.value, c])
    pair = EigenPair(value, vector, pair.side, pair.kind)
    moved = conjugate_eigen(pair, c)
    return {
        "pair": jsonio.eigen_pair_to_json(moved),
        "pass": eigen_check(a, moved, args.tol),
    }


def _parse_system(payload, mode):
    a = jsonio.matrix_from_json(payload["a"], mode)
    b = jsonio.scalar_from_json(payload["b"], mode)
    c_scalars = [jsonio.scalar_from_json(v, mode) for v in payload["c"]]
    (a,), scalars = _unify([a], [b] + c_scalars)
    return a, scalars[0], Matrix.column(scalars[1:])


def _cmd_ode_solve(args, payload):
    a, b, c = _parse_system(payload, args.mode)
    form = jsonio.form_from_json(payload["form"])
    sol = build_solution(a, b, c, form, args.tol)
    grid = residual_grid()
    residuals = solution_residual(sol, a, grid)
    return {
        "solution": jsonio.solution_to_json(sol),
        "residual_table": [[t, r] for t, r in zip(grid, residuals)],
        "max_residual": max(residuals),
    }


def _cmd_ode_check(args, payload):
    t_end = float(payload.get("t_end", 1.0))
    h = float(payload.get("h", 1e-3))
    a_raw = payload["a"]
    if isinstance(a_raw, dict):
        if {"b", "c", "form"} <= payload.keys():
            a, b, c = _parse_system(payload, args.mode)
            sol = build_solution(a, b, c, jsonio.form_from_json(payload["form"]),
                                 args.tol)
            x0 = sol.evaluate(0.0)
            traj = rk4_integrate(a, x0, t_end, h)
            endpoint = traj[-1][1]
            closed = sol.evaluate(t_end)
            return {
                "rk4_endpoint": jsonio.vector_to_json(endpoint),
                "closed_form_endpoint": jsonio.vector_to_json(closed),
                "deviation": (endpoint - closed).max_magnitude(),
            }
        a = jsonio.matrix_from_json(a_raw, args.mode)
        x0 = jsonio.vector_from_json(payload["x0"], args.mode, (a.n_rows, 1))
        (a, x0), _ = _unify([a, x0], [])
        traj = rk4_integrate(a, x0, t_end, h)
        return {"rk4_endpoint": jsonio.vector_to_json(traj[-1][1])}
    a = jsonio.scalar_from_json(a_raw, args.mode)
    x0 = jsonio.scalar_from_json(payload["x0"], args.mode)
    (a, x0) = jsonio._lift([a, x0])
    traj = rk4_integrate(a, x0, t_end, h)
    endpoint = traj[-1][1]
    closed = exp_scalar(a, t_end) * x0
    return {
        "rk4_endpoint": jsonio.scalar_to_json(endpoint),
        "closed_form_endpoint": jsonio.scalar_to_json(closed),
        "deviation": (endpoint - closed).magnitude(),
    }


def _cmd_exp_identity(args, payload):
    a = jsonio.scalar_from_json(payload["a"], args.mode)
    c = jsonio.scalar_from_json(payload["c"], args.mode)
    (a, c) = jsonio._lift([a, c])
    t = float(payload.get("t", 1.0))
    r1, r2, r3 = conj_exp_residuals(a, c, t)
    return {"residuals": [r1, r2, r3], "t": t}


# -- selftest ------------------------------------------------------------------


def _selftest_checks(seed, tol):
    rng = Random(seed)
    RC, CR = ProductKind.RC, ProductKind.CR

    def scalar_algebra():
        ok = bad = 0
        for _ in range(300):
            p = gen.rational_quaternion(rng)
            q = gen.rational_quaternion(rng)
            r = gen.rational_quaternion(rng)
            good = ((p * q) * r == p * (q * r)
                    and p * (q + r) == p * q + p * r
                    and (p + q) * r == p * r + q * r)
            if not q.is_zero():
                good = good and q * q.inv() == q.one() and q.inv() * q == q.one()
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def product_identity():
        ok = bad = 0
        for _ in range(40):
            n = rng.randint(1, 4)
            a = gen.quaternion_matrix(rng, n, n)
            e = Matrix.identity(n, a[0, 0])
            for kind in (RC, CR):
                good = mul(e, a, kind) == a and mul(a, e, kind) == a
                ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def transpose_duality():
        ok = bad = 0
        for _ in range(150):
            n, m, p = rng.randint(1, 4), rng.randint(1, 4), rng.randint(1, 4)
            a = gen.quaternion_matrix(rng, n, m)
            b = gen.quaternion_matrix(rng, p, n)
            lhs = mul(a, b, CR)
            rhs = mul(a.transpose(), b.transpose(), RC).transpose()
            ok, bad = (ok + 1, bad) if lhs == rhs else (ok, bad + 1)
        return ok, bad

    def product_associativity():
        ok = bad = 0
        for _ in range(60):
            n = rng.randint(1, 3)
            a, b, c = (gen.quaternion_matrix(rng, n, n) for _ in range(3))
            for kind in (RC, CR):
                good = mul(mul(a, b, kind), c, kind) == mul(a, mul(b, c, kind), kind)
                ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def inverse_two_sided():
        ok = bad = 0
        for _ in range(40):
            n = rng.randint(1, 3)
            for kind in (RC, CR):
                a = gen.invertible_quaternion_matrix(rng, n, kind)
                ainv = inverse(a, kind)
                e = Matrix.identity(n, a[0, 0])
                good = mul(a, ainv, kind) == e and mul(ainv, a, kind) == e
                ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def quasidet_inverse():
        ok = bad = 0
        one = Quaternion(1)
        for _ in range(25):
            n = rng.randint(1, 3)
            a = gen.invertible_quaternion_matrix(rng, n, RC)
            ainv = inverse(a, RC)
            table = quasidet_matrix(a, RC)
            for i in range(n):
                for j in range(n):
                    q = table[i][j]
                    if q is UNDEFINED:
                        continue
                    good = q * ainv[i, j] == one
                    ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def eigen_implication():
        ok = bad = 0
        for _ in range(40):
            n = rng.randint(2, 3)
            a, _, values, pairs, side, kind = gen.random_eigen_instance(rng, n)
            for value, pair in zip(values, pairs):
                good = eigen_check(a, pair) and is_matrix_eigenvalue(a, value, kind)
                ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def conjugacy_closure():
        ok = bad = 0
        for _ in range(20):
            a, _, _, pairs, side, kind = gen.random_eigen_instance(rng, 2)
            for pair in pairs:
                for _ in range(3):
                    c = gen.nonzero_rational_quaternion(rng)
                    moved = conjugate_eigen(pair, c)
                    ok, bad = (ok + 1, bad) if eigen_check(a, moved) else (ok, bad + 1)
        return ok, bad

    def commutation_criterion():
        ok = bad = 0
        for _ in range(20):
            side = rng.choice((Side.LEFT, Side.RIGHT))
            kind = rng.choice((RC, CR))
            a, _, _, pairs = gen.diagonalizable_instance(
                rng, 2, side, kind, dense_vectors=True)
            if all(e.imag_norm_sq() == 0 for e in a.entries()):
                continue
            c = gen.nonzero_rational_quaternion(rng)
            predicted = all(in_center(c, e) for e in a.entries())
            good = scaling_preserves(pairs[0], c, a) == predicted
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def remark_13_14():
        ok = bad = 0
        for _ in range(30):
            n = rng.randint(2, 3)
            kind = rng.choice((RC, CR))
            f = gen.quaternion_matrix(rng, n, n)
            g = gen.invertible_quaternion_matrix(rng, n, kind,
                                                 entry=gen.real_quaternion)
            b = rng.choice([gen.rational_quaternion(rng), f[0, 0]])
            good = pair_eigen_check(f, g, b, kind) == is_matrix_eigenvalue(f, b, kind)
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def exp_conjugation():
        ok = bad = 0
        for _ in range(150):
            a = gen.rational_quaternion(rng).to_float() * 0.5
            c = gen.nonzero_rational_quaternion(rng).to_float() * 0.5
            t = rng.uniform(0.0, 2.0)
            rs = conj_exp_residuals(a, c, t)
            scale = 1.0 + exp_scalar(a, t).magnitude() * (1.0 + c.magnitude())
            good = all(r <= 1e-9 * scale for r in rs)
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def series_vs_closed():
        ok = bad = 0
        for _ in range(100):
            a = gen.rational_quaternion(rng).to_float() * 0.5
            t = rng.uniform(0.0, 2.0)
            d = (exp_scalar(a, t) - exp_scalar_series(a, t)).magnitude()
            good = d <= 1e-12 * (1.0 + exp_scalar(a, t).magnitude())
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def truncated_series():
        ok = bad = 0
        for _ in range(10):
            a = gen.rational_quaternion(rng)
            c = gen.nonzero_rational_quaternion(rng)
            conj = c.inv() * a * c
            good = all(c * _pow_scalar(conj, nn) == _pow_scalar(a, nn) * c
                       for nn in range(9))
            ok, bad = (ok + 1, bad) if good else (ok, bad + 1)
        return ok, bad

    def ode_residuals():
        ok = bad = 0
        for _ in range(6):
            a, _, values, pairs = gen.diagonalizable_instance(
                rng, 2, Side.LEFT, CR)
            af = a.to_float()
            pair = pairs[0]
            sol = build_solution(af, pair.value.to_float(),
                                 pair.vector.to_float(), SolutionForm.LEFT_EXP)
            res = max(solution_residual(sol, af))
            ok, bad = (ok + 1, bad) if res <= 1e-8 else (ok, bad + 1)
        return ok, bad

    def rk4_match():
        ok = bad = 0
        for _ in range(3):
            a, _, values, pairs = gen.diagonalizable_instance(
                rng, 2, Side.LEFT, CR)
            af = a.to_float()
            pair = pairs[0]
            sol = build_solution(af, pair.value.to_float(),
                                 pair.vector.to_float(), SolutionForm.LEFT_EXP)
            traj = rk4_integrate(af, sol.evaluate(0.0), 1.0, 1e-3)
            dev = (traj[-1][1] - sol.evaluate(1.0)).max_magnitude()
            ok, bad = (ok + 1, bad) if dev <= 1e-6 else (ok, bad + 1)
        return ok, bad

    return [
        ("scalar_algebra", scalar_algebra),
        ("product_identity", product_identity),
        ("transpose_duality", transpose_duality),
        ("product_associativity", product_associativity),
        ("inverse_two_sided", inverse_two_sided),
        ("quasidet_inverse", quasidet_inverse),
        ("eigen_implication", eigen_implication),
        ("conjugacy_closure", conjugacy_closure),
        ("commutation_criterion", commutation_criterion),
        ("remark_13_14", remark_13_14),
        ("exp_conjugation", exp_conjugation),
        ("series_vs_closed", series_vs_closed),
        ("truncated_series", truncated_series),
        ("ode_residuals", ode_residuals),
        ("rk4_match", rk4_match),
    ]


def _pow_scalar(q, n):
    out = q.one()
    for _ in range(n):
        out = out * q
    return out


def _cmd_selftest(args, payload):
    results = []
    total_ok = total_bad = 0
    for name, check in _selftest_checks(args.seed, args.tol):
        ok, bad = check()
        results.append({"name": name, "passed": ok, "failed": bad})
        total_ok += ok
        total_bad += bad
    return {
        "checks": results,
        "seed": args.seed,
        "total_passed": total_ok,
        "total_failed": total_bad,
    }, (0 if total_bad == 0 else 2)


_HANDLERS = {
    "mul": _cmd_mul,
    "power": _cmd_power,
    "invert": _cmd_invert,
    "rank": _cmd_rank,
    "quasidet": _cmd_quasidet,
    "eig-verify": _cmd_eig_verify,
    "diagonalize": _cmd_diagonalize,
    "spectrum": _cmd_spectrum,
    "conjugate": _cmd_conjugate,
    "ode-solve": _cmd_ode_solve,
    "ode-check": _cmd_ode_check,
    "exp-identity": _cmd_exp_identity,
    "selftest": _cmd_selftest,
}

_FLOAT_DEFAULT = {"ode-solve", "ode-check", "exp-identity"}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quatmat",
        description="quaternion matrix algebra: two products, quasideterminants, "
                    "eigen verification, exponential ODE solutions")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _HANDLERS:
        p = sub.add_parser(name)
        if name != "selftest":
            p.add_argument("input", nargs="?",
                           help="file path, inline JSON, or - for stdin")
        p.add_argument("--mode", choices=["rational", "float"],
                       default=("float" if name in _FLOAT_DEFAULT else "rational"))
        p.add_argument("--kind", choices=["rc", "cr"], default="rc")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _HANDLERS[args.command]
    try:
        if args.command == "selftest":
            result, code = handler(args, None)
            _emit(result)
            return code
        payload = _load_payload(getattr(args, "input", None))
        result = handler(args, payload)
    except SingularMatrixError as exc:
        _emit({"error": "singular", "rank": exc.rank})
        return 2
    except NotDiagonalizableError as exc:
        _emit({"error": "not_diagonal",
               "residual": jsonio.matrix_to_json(exc.residual)})
        return 2
    except RejectedSolutionError as exc:
        _emit({"error": "rejected", "reason": exc.reason})
        return 2
    except (NoSolutionError, UnsupportedModeError, ZeroDivisionError) as exc:
        _emit({"error": "domain", "detail": str(exc)})
        return 2
    except (jsonio.InputFormatError, ShapeError, json.JSONDecodeError, KeyError,
            IndexError, TypeError, ValueError, OSError) as exc:
        _emit({"error": "input", "detail": str(exc)})
        return 1
    _emit(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
