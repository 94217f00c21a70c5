"""Compare the compiled kernel extension against the numpy fallback.

Times the three hot paths on a representative implicit thermal step: CSR
matvec, Jacobi-preconditioned CG, and the bilinear table gather used by the
reconstruction stage. Run from the repository root:

    python3 benchmarks/bench_kernels.py [--n 96] [--repeats 50]
"""

import argparse
import time

import numpy as np

from tmscale import fem, microgen
from tmscale import _kernels_py
from tmscale.microgen import RveGeometry

try:
    from tmscale import _kernels
except ImportError:
    _kernels = None


def build_system(n):
    geom = RveGeometry([[0.5, 0.5, 0.3, 0.3, 0.0]])
    mesh = microgen.build_mesh(n, geom)
    k = np.where(mesh.material == 1, 8.0, 2.0)
    c = np.where(mesh.material == 1, 5.0, 3.0)
    A = fem.assemble_diffusion(mesh, k)
    Mass = fem.assemble_mass(mesh, c / 1e-2)
    A.data += Mass.data
    b = fem.load_scalar(mesh, np.full(mesh.num_triangles, 100.0))
    fem.apply_dirichlet(A, b, mesh.boundary_nodes, 373.15)
    return A, b


def bench_backend(impl, A, b, repeats, tol):
    inv_diag = 1.0 / A.diagonal()
    rows = A.rows
    x = np.empty_like(b)
    out = np.empty_like(b)

    t0 = time.perf_counter()
    for _ in range(repeats):
        impl.csr_matvec(A.indptr, A.indices, A.data, rows, b, out)
    matvec_ms = (time.perf_counter() - t0) / repeats * 1e3

    x[:] = 0.0
    t0 = time.perf_counter()
    iters, converged = impl.pcg(A.indptr, A.indices, A.data, rows, b, x,
                                inv_diag, tol, 10 * A.n)
    pcg_s = time.perf_counter() - t0
    assert converged, "pcg failed to converge in the benchmark"

    rng = np.random.default_rng(0)
    table = rng.standard_normal((8, 65, 65))
    m = 200_000
    iy = rng.integers(0, 64, m)
    ix = rng.integers(0, 64, m)
    wy = rng.random(m)
    wx = rng.random(m)
    t0 = time.perf_counter()
    for _ in range(repeats):
        impl.gather_bilinear(table, iy, ix, wy, wx)
    gather_ms = (time.perf_counter() - t0) / repeats * 1e3

    return matvec_ms, iters, pcg_s, gather_ms


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=96, help="mesh subdivisions per side")
    ap.add_argument("--repeats", type=int, default=50)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    A, b = build_system(args.n)
    print(f"system: {A.n} unknowns, {A.data.size} nonzeros, tol {args.tol:g}")
    header = f"{'backend':<8} {'matvec ms':>10} {'pcg iters':>10} {'pcg s':>8} {'gather ms':>10}"
    print(header)
    print("-" * len(header))
    results = {}
    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.append(("ext", _kernels))
    for name, impl in backends:
        mv, iters, ps, gb = bench_backend(impl, A, b, args.repeats, args.tol)
        results[name] = (mv, ps, gb)
        print(f"{name:<8} {mv:>10.3f} {iters:>10d} {ps:>8.3f} {gb:>10.3f}")
    if "ext" in results:
        mv_r = results["python"][0] / results["ext"][0]
        ps_r = results["python"][1] / results["ext"][1]
        gb_r = results["python"][2] / results["ext"][2]
        print(f"speedup ext vs python: matvec {mv_r:.2f}x, pcg {ps_r:.2f}x, "
              f"gather {gb_r:.2f}x")
    else:
        print("extension not built; python fallback only")


if __name__ == "__main__":
    main()
