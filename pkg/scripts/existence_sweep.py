"""Find a witness for every (manifold, genus, boundary) in a grid and
print one line per query with the piece pattern that realizes it."""
import argparse
import time

from meridional.assembler import surface_invariants
from meridional.enumeration import NotFound, SearchSpec, find_construction
from meridional.torus import ManifoldSpec


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--manifolds", nargs="+", default=["S3", "S1xS2", "L(5,2)"])
    ap.add_argument("--genera", nargs="+", type=int, default=[0, 1, 2, 3])
    ap.add_argument("--boundaries", nargs="+", type=int, default=[0, 1, 2, 4])
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--max-pieces", type=int, default=5)
    ap.add_argument("--max-coeff", type=int, default=5)
    ap.add_argument("--max-crossings", type=int, default=6)
    args = ap.parse_args()

    print(f"{'manifold':8} {'g':>2} {'b':>2}  result")
    for name in args.manifolds:
        m = ManifoldSpec.parse(name)
        for g in args.genera:
            for b in args.boundaries:
                spec = SearchSpec(m, g, b, args.max_r, args.max_pieces, args.max_coeff,
                                  args.max_crossings)
                t0 = time.perf_counter()
                try:
                    a = find_construction(spec)
                except NotFound as exc:
                    why = "grammar" if exc.structural else "bounds"
                    print(f"{name:8} {g:>2} {b:>2}  none ({why})")
                    continue
                comps = surface_invariants(a).components
                shape = "".join(a.types)
                print(f"{name:8} {g:>2} {b:>2}  {shape:6} r={a.r} gamma={' '.join(map(str, a.gamma))}"
                      f"  components={len(comps)}  {time.perf_counter() - t0:.3f}s")


if __name__ == "__main__":
    main()
