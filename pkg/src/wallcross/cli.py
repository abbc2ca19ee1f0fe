"""Command-line front end.

Exit codes: 0 success, 1 a check did not hold, 2 bad input.
"""

import argparse
import os
import sys
from fractions import Fraction

from .engine import (GammaSeries, MissingGammaError, all_dec_sets,
                     binomial_question_experiment, dec_sets, gamma_consistency, grouped_by_k,
                     proper_subset_vanishing, s_partition_sum, s_partition_vanishing,
                     wall_cross_terms)
from .localization import ab_integrate, adjoint_experiment, flag_model, grassmannian_model, point_model
from .quiver import (DimVector, FramedQuiver, StabilityParam, Wall, WallCrossingContext,
                     classify_parameter, enumerate_walls, generic_point_on_wall, validate)
from .stability import (EnhancedDim, ParameterSearchError, SlopeParams, cond_a, cond_b, cond_c,
                        find_parameters, two_stability)
from .symbolic import THETA, ParseError, to_text


class InputError(Exception):
    pass


def _fmt(x):
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return to_text(x)


def _vector(text, keys=None, cast=int):
    """'2,3' (in vertex order) or '1=2,2=3'."""
    if text is None:
        return None
    items = [t for t in text.replace(" ", "").split(",") if t]
    try:
        if items and all("=" in t for t in items):
            return {k: cast(v) for k, v in (t.split("=", 1) for t in items)}
        if keys is None:
            keys = [str(i) for i in range(len(items))]
        if len(items) != len(keys):
            raise InputError(f"expected {len(keys)} entries, got {len(items)}")
        return dict(zip(keys, map(cast, items)))
    except ValueError as exc:
        raise InputError(f"cannot read vector {text!r}: {exc}") from exc


def _load_quiver(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return FramedQuiver.from_json(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _gamma(spec):
    if spec == "handsaw":
        return GammaSeries.handsaw()
    if spec == "symbolic":
        return GammaSeries.symbolic()
    if spec.startswith("table:"):
        path = spec[len("table:"):]
        try:
            with open(path, encoding="utf-8") as fh:
                return GammaSeries.from_text(fh.read())
        except (OSError, ValueError) as exc:
            raise InputError(f"bad gamma table {path}: {exc}") from exc
    raise InputError(f"unknown gamma source {spec!r}")


# -- subcommands ------------------------------------------------------------------

def cmd_validate(args, out):
    problems = validate(_load_quiver(args.quiver))
    for p in problems:
        print(p, file=out)
    if problems:
        return 1
    print("ok", file=out)
    return 0


def cmd_walls(args, out):
    q = _load_quiver(args.quiver)
    alpha = _vector(args.alpha, list(q.internal))
    walls = enumerate_walls(alpha)
    for w in walls:
        print(",".join(str(w.beta[k]) for k in alpha), file=out)
    if args.zeta:
        zeta = _vector(args.zeta, list(alpha), Fraction)
        cl = classify_parameter(zeta, alpha)
        label = cl.kind
        if cl.kind == "on-wall":
            label += "(" + ",".join(str(cl.wall.beta[k]) for k in alpha) + ")"
        print(f"zeta: {label}", file=out)
    return 0


def _flag_for(args, alpha, zero):
    if args.flag:
        try:
            return EnhancedDim(alpha, zero, tuple(int(x) for x in args.flag.split(",")))
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    return EnhancedDim.full(alpha, zero)


def _wall_setup(args):
    alpha = _vector(args.alpha)
    beta = _vector(args.wall, list(alpha))
    zero = args.zero or next((k for k in alpha if beta.get(k)), None)
    if zero is None:
        raise InputError("the wall vector is zero")
    try:
        wall = Wall(DimVector({k: beta.get(k, 0) for k in alpha}))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    return DimVector(alpha), wall, zero


def cmd_params_find(args, out):
    alpha, wall, zero = _wall_setup(args)
    flag = _flag_for(args, alpha, zero)
    if args.zeta_bar:
        zb = StabilityParam(_vector(args.zeta_bar, list(alpha), Fraction), alpha)
    else:
        zb = generic_point_on_wall(wall.beta, alpha)
    cap = args.max_denom or os.environ.get("WC_MAX_DENOM")
    try:
        choice = find_parameters(wall, args.ell, flag, zb, cap)
    except ParameterSearchError as exc:
        print(f"failed: {exc.predicate}", file=out)
        return 1
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    keys = list(alpha)
    print("zeta_bar: " + ",".join(_fmt(zb[k]) for k in keys), file=out)
    print("zeta+: " + ",".join(_fmt(choice.zeta_plus[k]) for k in keys), file=out)
    print("zeta-: " + ",".join(_fmt(choice.zeta_minus[k]) for k in keys), file=out)
    print("eta: " + ",".join(_fmt(e) for e in choice.eta), file=out)
    tp, tm = choice.integral_thetas()
    for name, th in (("theta+", tp), ("theta-", tm)):
        d = th.as_dict(zero)
        print(f"{name}: " + " ".join(f"{k}={_fmt(v)}" for k, v in d.items()), file=out)
    print(f"D: {_fmt(choice.D * choice.scale)}", file=out)
    print("certified: cond_a cond_b two_stability cond_c", file=out)
    return 0


def cmd_params_check(args, out):
    alpha, wall, zero = _wall_setup(args)
    flag = _flag_for(args, alpha, zero)
    keys = list(alpha)
    zb = StabilityParam(_vector(args.zeta_bar, keys, Fraction), alpha)
    zp = StabilityParam(_vector(args.zeta_plus, keys, Fraction), alpha)
    zm = StabilityParam(_vector(args.zeta_minus, keys, Fraction), alpha)
    try:
        eta = tuple(Fraction(e) for e in args.eta.split(","))
        plus, minus = SlopeParams(zp, eta), SlopeParams(zm, eta)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if len(eta) != flag.L:
        raise InputError(f"eta needs {flag.L} entries")
    results = [
        ("cond_a(zeta+)", cond_a(plus, zb, flag)),
        ("cond_a(zeta-)", cond_a(minus, zb, flag)),
        ("cond_b", cond_b(plus, wall, args.ell, flag)),
        ("two_stability", two_stability(eta, alpha[zero], wall.beta[zero])),
        ("cond_c", cond_c(plus, flag)),
    ]
    for name, ok in results:
        print(f"{name}: {'pass' if ok else 'FAIL'}", file=out)
    return 0 if all(ok for _, ok in results) else 1


def cmd_dec_enum(args, out):
    if args.alpha0 < 0 or args.beta0 < 1:
        raise InputError("need alpha0 >= 0 and beta0 >= 1")
    data = dec_sets(args.alpha0, args.beta0, args.j) if args.j else all_dec_sets(args.alpha0, args.beta0)
    for x in data:
        print(f"{x}\tinf={{{','.join(map(str, x.infinity))}}}", file=out)
    print(f"count: {len(data)}", file=out)
    return 0


def cmd_wc_coeffs(args, out):
    q = _load_quiver(args.quiver)
    alpha = _vector(args.alpha, list(q.internal))
    beta = _vector(args.beta, list(q.internal))
    try:
        ctx = WallCrossingContext.create(q, alpha, beta, args.zero)
    except (ValueError, StopIteration) as exc:
        raise InputError(f"bad wall: {exc}") from exc
    try:
        terms = wall_cross_terms(ctx, _gamma(args.gamma), args.symbolic_beta_bar)
    except MissingGammaError as exc:
        raise InputError(f"missing gamma value: {exc}") from exc
    print(f"beta_bar: {ctx.beta_bar}", file=out)
    for t in terms:
        print(f"{t.datum}\tk={t.k}\t{to_text(t.coefficient)}", file=out)
    print("# grouped by k", file=out)
    for k, c in grouped_by_k(terms).items():
        print(f"k={k}\t{to_text(c)}", file=out)
    return 0


def cmd_gamma_check(args, out):
    value = gamma_consistency(_gamma(args.gamma), args.d, args.beta0)
    print(to_text(value), file=out)
    return 0 if value.is_zero() else 1


def cmd_identity(args, out):
    if args.identity == "s-vanishing":
        d = tuple(int(x) for x in args.d.split(","))
        if args.ordered:
            value = s_partition_sum(d, args.n, args.beta0)
        else:
            value = s_partition_vanishing(d, args.n, args.beta0)
        print(value, file=out)
        return 0 if value == 0 else 1
    if args.identity == "proper-subset":
        value = proper_subset_vanishing(int(args.d), args.beta0, _gamma(args.gamma))
        print(to_text(value), file=out)
        return 0 if value.is_zero() else 1
    # binomial question: an experiment, reported but never gated on
    lhs, rhs, equal = binomial_question_experiment(args.alpha0, args.beta0, args.i, _gamma(args.gamma))
    print(f"lhs: {to_text(lhs)}", file=out)
    print(f"rhs: {to_text(rhs)}", file=out)
    print(f"equal: {str(equal).lower()}", file=out)
    return 0


def _model(spec):
    try:
        kind, _, sizes = spec.partition(":")
        if kind in ("grassmannian", "gr", "quotient-grassmannian"):
            k, n = (int(x) for x in sizes.split(","))
            return grassmannian_model(k, n, quotient=kind == "quotient-grassmannian")
        if kind == "flag":
            dims, n = sizes.split(";")
            return flag_model(tuple(int(x) for x in dims.split(",") if x), int(n))
        if kind == "point":
            return point_model()
    except ValueError as exc:
        raise InputError(f"bad model {spec!r}: {exc}") from exc
    raise InputError(f"unknown model {spec!r}")


def cmd_localize(args, out):
    model = _model(args.model)
    twist = None if args.twist == "none" else THETA
    try:
        value = ab_integrate(model, args.integrand, twist=twist)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(to_text(value), file=out)
    return 0


def cmd_adjoint(args, out):
    if not 0 <= args.alpha0 <= args.r:
        raise InputError("need 0 <= alpha0 <= r")
    res = adjoint_experiment(args.r, args.alpha0)
    print(f"lhs: {to_text(res.lhs)}", file=out)
    print(f"rhs: {to_text(res.rhs)}", file=out)
    print(f"equal: {str(res.equal).lower()}", file=out)
    return 0 if res.equal else 1


def build_parser():
    p = argparse.ArgumentParser(prog="wallcross", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a quiver description")
    s.add_argument("quiver")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("walls", help="list walls for a dimension vector")
    s.add_argument("quiver")
    s.add_argument("--alpha", required=True)
    s.add_argument("--zeta", help="classify this parameter")
    s.set_defaults(func=cmd_walls)

    for name, func, text in (("params-find", cmd_params_find, "search stability parameters"),
                             ("params-check", cmd_params_check, "certify given parameters")):
        s = sub.add_parser(name, help=text)
        s.add_argument("--alpha", required=True, help="e.g. 0=2 or 1=1,2=2")
        s.add_argument("--wall", required=True)
        s.add_argument("--ell", type=int, required=True)
        s.add_argument("--zero")
        s.add_argument("--flag", help="flag dimensions F_1..F_L")
        s.add_argument("--zeta-bar", required=name == "params-check")
        if name == "params-find":
            s.add_argument("--max-denom", type=int)
        else:
            s.add_argument("--zeta-plus", required=True)
            s.add_argument("--zeta-minus", required=True)
            s.add_argument("--eta", required=True)
        s.set_defaults(func=func)

    s = sub.add_parser("dec-enum", help="enumerate decomposition data")
    s.add_argument("--alpha0", type=int, required=True)
    s.add_argument("--beta0", type=int, required=True)
    s.add_argument("--j", type=int)
    s.set_defaults(func=cmd_dec_enum)

    s = sub.add_parser("wc-coeffs", help="wall-crossing coefficients")
    s.add_argument("quiver")
    s.add_argument("--alpha", required=True)
    s.add_argument("--beta", required=True)
    s.add_argument("--zero")
    s.add_argument("--gamma", default="symbolic")
    s.add_argument("--symbolic-beta-bar", action="store_true")
    s.set_defaults(func=cmd_wc_coeffs)

    s = sub.add_parser("gamma-check", help="one-arrow recursion for a gamma series")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--beta0", type=int, default=1)
    s.add_argument("--gamma", default="handsaw")
    s.set_defaults(func=cmd_gamma_check)

    s = sub.add_parser("identity-check", help="combinatorial identities")
    s.add_argument("identity", choices=["s-vanishing", "proper-subset", "binomial-question"])
    s.add_argument("--d", help="part sizes (s-vanishing) or degree (proper-subset)")
    s.add_argument("--n", type=int)
    s.add_argument("--ordered", action="store_true", help="s-vanishing: keep the given order of d")
    s.add_argument("--beta0", type=int, default=1)
    s.add_argument("--alpha0", type=int)
    s.add_argument("--i", type=int)
    s.add_argument("--gamma", default="handsaw")
    s.set_defaults(func=cmd_identity)

    s = sub.add_parser("localize", help="fixed-point integral")
    s.add_argument("--model", required=True,
                   help="grassmannian:k,n | quotient-grassmannian:k,n | flag:d1,d2;n | point")
    s.add_argument("--integrand", default="tangent")
    s.add_argument("--twist", choices=["theta", "none"], default="theta")
    s.set_defaults(func=cmd_localize)

    s = sub.add_parser("experiment", help="compare both sides of a formula")
    s.add_argument("name", choices=["adjoint"])
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--alpha0", type=int, required=True)
    s.set_defaults(func=cmd_adjoint)
    return p


def _check_identity_args(args):
    if args.command != "identity-check":
        return
    need = {"s-vanishing": ("d", "n"), "proper-subset": ("d",),
            "binomial-question": ("alpha0", "i")}[args.identity]
    missing = [n for n in need if getattr(args, n) is None]
    if missing:
        raise InputError(f"{args.identity} needs --{' --'.join(missing)}")


def run(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        _check_identity_args(args)
        return args.func(args, out)
    except (InputError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
