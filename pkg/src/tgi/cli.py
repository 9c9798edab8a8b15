"""Command-line front end.

Subcommands: product, inv, solve, deblur, bench, info.  Exit codes:
0 success, 2 usage or shape error, 3 I/O error, 4 numerical failure,
5 iterative non-convergence.
"""

import argparse
import csv
import json
import sys
import time

import numpy as np

from . import io
from .construct import random_index_tensor
from .core import (
    InconsistentSystemError, NumericalError, ShapeError, Tensor3, Transform,
    index_profile, is_diag_dominant, m_product, multirank, spectral_radius,
    tubal_norm,
)
from .geninv import (
    COMPOSITE_KINDS, INVERSE_KINDS, composite_inverse, core_ep_inverse,
    drazin_inverse, mp_inverse, residual_suite,
)
from .imaging import (
    BlurModel, build_blur_tensor, deblur, image_array_from_tensor, psnr,
    tensor_from_image_array,
)
from .solvers import (
    SolverConfig, gauss_seidel_solve, general_solution_core_ep, jacobi_solve,
    solve_composite, solve_drazin, tikhonov_solve,
)
from .transforms import (
    dct_transform, dft_transform, identity_transform,
    random_invertible_transform,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NUMERICAL = 4
EXIT_NO_CONVERGENCE = 5

SOLVE_METHODS = ("jacobi", "gauss-seidel", "tikhonov", "drazin",
                 "core-ep", "cmp", "dmp", "mpd")

_SWEEP_LAMBDAS = tuple(float(x) for x in np.logspace(-6.0, 0.0, 13))


def resolve_transform(spec: str, p: int) -> Transform:
    """Build a transform from its CLI grammar: dft | dct | identity | rand:<seed> | file:<path>."""
    if spec == "dft":
        return dft_transform(p)
    if spec == "dct":
        return dct_transform(p)
    if spec == "identity":
        return identity_transform(p)
    if spec.startswith("rand:"):
        try:
            seed = int(spec[5:], 10)
        except ValueError:
            raise ValueError(f"bad random-transform seed in {spec!r}") from None
        if seed < 0:
            raise ValueError("random-transform seed must be non-negative")
        return random_invertible_transform(p, seed)
    if spec.startswith("file:"):
        M = io.load_transform_matrix(spec[5:])
        if M.shape[0] != p:
            raise ShapeError(
                f"transform file is {M.shape[0]}x{M.shape[0]} but the tensor has p={p}")
        return Transform(M)
    raise ValueError(f"unknown transform spec {spec!r}")


def _write_report(path, payload: dict) -> None:
    if path is None:
        return
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _cmd_product(args) -> int:
    A = io.load_tensor(args.a)
    B = io.load_tensor(args.b)
    T = resolve_transform(args.transform, A.p)
    t0 = time.perf_counter()
    C = m_product(A, B, T)
    elapsed = time.perf_counter() - t0
    io.save_tensor(args.out, C)
    _write_report(args.report, {
        "subcommand": "product",
        "a": args.a, "b": args.b, "out": args.out,
        "transform": args.transform,
        "shape": list(C.shape),
        "elapsed_s": elapsed,
    })
    return EXIT_OK


def _cmd_inv(args) -> int:
    A = io.load_tensor(args.input)
    T = resolve_transform(args.transform, A.p)
    t0 = time.perf_counter()
    payload = {"subcommand": "inv", "kind": args.kind, "in": args.input,
               "out": args.out, "transform": args.transform}
    if args.kind == "mp":
        X = mp_inverse(A, T, args.rank_tol, threads=args.threads)
        k = 0
    elif args.kind == "drazin":
        X, profile = drazin_inverse(A, T, args.rank_tol, threads=args.threads)
        k = profile.tubal_index
        payload["indices"] = list(profile.indices)
        payload["multirank"] = list(profile.ranks)
        payload["tubal_index"] = k
    elif args.kind == "core-ep":
        X = core_ep_inverse(A, T, args.rank_tol, threads=args.threads)
        k = index_profile(A, T, args.rank_tol).tubal_index
        payload["tubal_index"] = k
    else:
        X = composite_inverse(A, args.kind, T, args.rank_tol, threads=args.threads)
        k = index_profile(A, T, args.rank_tol).tubal_index
        payload["tubal_index"] = k
    payload["elapsed_s"] = time.perf_counter() - t0
    io.save_tensor(args.out, X)
    if args.report is not None:
        if A.m == A.n and args.kind == "mp":
            k = index_profile(A, T, args.rank_tol).tubal_index
        payload["residuals"] = residual_suite(A, X, k, T).as_dict()
        _write_report(args.report, payload)
    return EXIT_OK


def _cmd_solve(args) -> int:
    A = io.load_tensor(args.A)
    B = io.load_tensor(args.B)
    T = resolve_transform(args.transform, A.p)
    payload = {"subcommand": "solve", "method": args.method,
               "A": args.A, "B": args.B, "out": args.out,
               "transform": args.transform}
    exit_code = EXIT_OK
    t0 = time.perf_counter()
    if args.method in ("jacobi", "gauss-seidel"):
        cfg = SolverConfig(epsilon=args.eps, max_iter=args.max_iter,
                           method=args.method)
        solver = jacobi_solve if args.method == "jacobi" else gauss_seidel_solve
        X, report = solver(A, B, None, cfg, T, threads=args.threads)
        payload.update(report.as_dict())
        if not report.all_converged:
            exit_code = EXIT_NO_CONVERGENCE
            print("tgi: warning: iteration did not converge on every slice",
                  file=sys.stderr)
    elif args.method == "tikhonov":
        if args.lam is None:
            raise ValueError("--lambda is required for the tikhonov method")
        X = tikhonov_solve(A, B, args.lam, T, threads=args.threads)
        payload["lambda"] = args.lam
    elif args.method == "drazin":
        X = solve_drazin(A, B, T, args.rank_tol)
    elif args.method == "core-ep":
        Z = Tensor3.zeros(A.n, B.n, B.p)
        X = general_solution_core_ep(A, B, Z, T, args.rank_tol)
    else:
        X = solve_composite(A, B, args.method, T, args.rank_tol)
    payload["elapsed_s"] = time.perf_counter() - t0
    payload["final_residual"] = tubal_norm(m_product(A, X, T) - B, T)
    io.save_tensor(args.out, X)
    _write_report(args.report, payload)
    return exit_code


def _parse_psf(spec: str) -> dict:
    out = {}
    for part in spec.split(","):
        if "=" not in part:
            raise ValueError(f"bad psf component {part!r}; expected key=value")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    try:
        return {"sigma": float(out["sigma"]), "b": int(out["b"])}
    except (KeyError, ValueError) as exc:
        raise ValueError(f"psf spec must provide sigma=<float>,b=<int>: {exc}") from None


def _load_image_tensor(path: str) -> Tensor3:
    from PIL import Image
    with Image.open(path) as img:
        arr = np.asarray(img.convert("RGB"), dtype=float) / 255.0
    return tensor_from_image_array(arr)


def _save_image_tensor(path: str, A: Tensor3) -> None:
    from PIL import Image
    arr = image_array_from_tensor(A)
    Image.fromarray((arr * 255.0).round().astype(np.uint8), mode="RGB").save(path)


def _cmd_deblur(args) -> int:
    B = _load_image_tensor(args.input)
    psf = _parse_psf(args.psf)
    A = build_blur_tensor(BlurModel(n=B.m, sigma=psf["sigma"], b=psf["b"]))
    T = resolve_transform(args.transform, 3)
    truth = _load_image_tensor(args.true) if args.true else None
    metrics = {"subcommand": "deblur", "in": args.input, "out": args.out,
               "psf": psf, "transform": args.transform}
    if args.lam == "sweep":
        if truth is None:
            raise ValueError("--lambda sweep needs --true to score candidates")
        best = None
        sweep = []
        for lam in _SWEEP_LAMBDAS:
            restored = deblur(A, B, lam, T)
            score = psnr(restored, truth)
            sweep.append({"lambda": lam, "psnr": score})
            if best is None or score > best[1]:
                best = (lam, score, restored)
        lam, score, X = best
        metrics["sweep"] = sweep
        metrics["lambda"] = lam
        metrics["psnr_restored"] = score
    else:
        lam = float(args.lam)
        X = deblur(A, B, lam, T)
        metrics["lambda"] = lam
        if truth is not None:
            metrics["psnr_restored"] = psnr(X, truth)
    if truth is not None:
        metrics["psnr_blurred"] = psnr(B, truth)
    _save_image_tensor(args.out, X)
    _write_report(args.metrics, metrics)
    return EXIT_OK


def _bench_rows(args):
    rows = []
    for size in args.sizes:
        for spec in args.transforms:
            T = resolve_transform(spec, size)
            A = random_index_tensor(size, size, args.k, T, args.seed)
            for op in ("drazin", "core-ep"):
                def run():
                    if op == "drazin":
                        return drazin_inverse(A, T)[0]
                    return core_ep_inverse(A, T)
                run()  # warm-up excluded from the mean
                times = []
                for _ in range(args.reps):
                    t0 = time.perf_counter()
                    X = run()
                    times.append(time.perf_counter() - t0)
                res = residual_suite(A, X, args.k, T)
                row = {"size": size, "k": args.k, "transform": spec, "op": op,
                       "mean_time_s": sum(times) / len(times),
                       "e2": "", "e3": "", "e5": "", "e7": "", "e1k": res.e1k}
                if op == "drazin":
                    row["e2"], row["e5"] = res.e2, res.e5
                else:
                    row["e3"], row["e7"] = res.e3, res.e7
                rows.append(row)
    return rows


def _cmd_bench(args) -> int:
    if args.k not in (1, 2):
        raise ValueError("bench index target must be 1 or 2")
    if args.reps < 1:
        raise ValueError("repetitions must be at least 1")
    if not args.sizes:
        raise ValueError("at least one size is required")
    rows = _bench_rows(args)
    header = ["size", "k", "transform", "op", "mean_time_s",
              "e2", "e3", "e5", "e7", "e1k"]
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=header)
        writer.writeheader()
        writer.writerows(rows)
    _write_report(args.report, {"subcommand": "bench", "rows": rows})
    return EXIT_OK


def _cmd_info(args) -> int:
    A = io.load_tensor(args.input)
    T = resolve_transform(args.transform, A.p)
    doc = {
        "m": A.m, "n": A.n, "p": A.p,
        "multirank": list(multirank(A, T, args.rank_tol)),
        "tubal_norm": tubal_norm(A, T),
        "tubal_index": None,
        "spectral_radius": None,
        "diag_dominant": None,
    }
    if A.m == A.n:
        profile = index_profile(A, T, args.rank_tol)
        doc["tubal_index"] = profile.tubal_index
        doc["indices"] = list(profile.indices)
        doc["spectral_radius"] = spectral_radius(A, T)
        doc["diag_dominant"] = is_diag_dominant(A, T)
    print(json.dumps(doc, indent=2))
    _write_report(args.report, doc)
    return EXIT_OK


def _int_list(text: str) -> list:
    return [int(part) for part in text.split(",") if part]


def _str_list(text: str) -> list:
    return [part for part in text.split(",") if part]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tgi",
        description="Tensor products, generalized inverses, multilinear "
                    "solvers, and image deblurring under an invertible "
                    "3-mode transform.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_transform(p, default=None):
        p.add_argument("--transform", required=default is None, default=default,
                       help="dft | dct | identity | rand:<seed> | file:<path>")

    p = sub.add_parser("product", help="C = A * B")
    p.add_argument("--a", required=True, help="left tensor (T3J)")
    p.add_argument("--b", required=True, help="right tensor (T3J)")
    add_transform(p)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_product)

    p = sub.add_parser("inv", help="generalized inverse of a tensor")
    p.add_argument("--kind", required=True, choices=INVERSE_KINDS)
    p.add_argument("--in", dest="input", required=True, help="input tensor (T3J)")
    add_transform(p)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="write the defining-equation residuals as JSON")
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_inv)

    p = sub.add_parser("solve", help="solve A * X = B")
    p.add_argument("--method", required=True, choices=SOLVE_METHODS)
    p.add_argument("--A", required=True, help="coefficient tensor (T3J)")
    p.add_argument("--B", required=True, help="right-hand side (T3J)")
    add_transform(p)
    p.add_argument("--eps", type=float, default=1e-10,
                   help="per-slice stopping tolerance for iterative methods")
    p.add_argument("--max-iter", type=int, default=1000)
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="regularization weight (tikhonov only)")
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--report")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("deblur", help="restore a blurred RGB image")
    p.add_argument("--in", dest="input", required=True, help="blurred PNG")
    p.add_argument("--psf", required=True, help='e.g. "sigma=4,b=30"')
    p.add_argument("--true", help="clean PNG for PSNR scoring")
    p.add_argument("--lambda", dest="lam", required=True,
                   help="a positive float, or 'sweep' for a log grid")
    add_transform(p, default="dct")
    p.add_argument("--out", required=True)
    p.add_argument("--metrics", help="write PSNR metrics as JSON")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=_cmd_deblur)

    p = sub.add_parser("bench", help="time the inverses on seeded tensors")
    p.add_argument("--sizes", type=_int_list, required=True, help="e.g. 20,30")
    p.add_argument("--k", type=int, required=True, help="target tubal index (1 or 2)")
    p.add_argument("--transforms", type=_str_list, required=True,
                   help="comma-separated transform specs")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--report")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("info", help="structural summary of a tensor")
    p.add_argument("--in", dest="input", required=True)
    add_transform(p)
    p.add_argument("--rank-tol", type=float, default=None)
    p.add_argument("--report")
    p.set_defaults(func=_cmd_info)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (io.FormatError, OSError) as exc:
        print(f"tgi: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ShapeError, ValueError) as exc:
        print(f"tgi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"tgi: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
