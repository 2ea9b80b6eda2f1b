"""Two ways to blur a two-outcome measurement, and why only one is fatal.

A pair of spin-lattice detectors read out a magnetization difference of
+-n around zero.  Blur can enter in two places:

* at the detector: each outcome is classified through a fuzzy threshold of
  width delta (``corr_fuzzy_detector``),
* at the reference frame: the analyser angles themselves jitter with a
  Gaussian of variance V (``corr_coarse_reference``).

Detector fuzziness can be beaten by making the outcome bigger (larger n);
reference jitter cannot -- the optimized CHSH value decays as exp(-4V)
no matter how macroscopic the outcome is.
"""

import math
from pathlib import Path

from coarsebell import (
    Correlator,
    GenericParams,
    corr_coarse_reference,
    corr_fuzzy_detector,
    discrimination_error,
    maximize_chsh,
)
from coarsebell.sweep import SweepSpec, SeriesSpec, emit_csv, emit_svg, run_sweep

OUT = Path(__file__).resolve().parent / "out"
STARTS = 16
CLASSICAL_BOUND = 2.0
QUANTUM_CEILING = 2.0 * math.sqrt(2.0)


def optimized_chsh(corr_fn) -> float:
    return maximize_chsh(Correlator(fn=corr_fn), starts=STARTS).value


def main() -> None:
    OUT.mkdir(exist_ok=True)

    print("= detector fuzziness, compensated by outcome size =")
    V = 4.0  # a width that completely washes out a microscopic detector
    print(f"fuzzy threshold variance V = {V} (delta = {math.sqrt(V):.3f})")
    for n in range(1, 7):
        params = GenericParams(n=n, delta=math.sqrt(V))
        value = optimized_chsh(lambda a, b: corr_fuzzy_detector(a, b, params))
        perr = discrimination_error(n, math.sqrt(V))
        tag = "classical" if value <= CLASSICAL_BOUND else "nonclassical"
        print(f"  n={n}: B = {value:.6f}  ({tag}; outcome misread prob {perr:.3g})")

    print()
    print("= reference-frame jitter, immune to outcome size =")
    for V in (0.1, 0.25, 0.5):
        row = []
        for n in (1, 3, 5):
            params = GenericParams(n=n, Delta=math.sqrt(V))
            row.append(optimized_chsh(lambda a, b: corr_coarse_reference(a, b, params)))
        spread = max(row) - min(row)
        want = QUANTUM_CEILING * math.exp(-4.0 * V)
        print(
            f"  V={V}: B = {row[0]:.9f} for n in (1, 3, 5)"
            f" (spread {spread:.1e}, closed form {want:.9f})"
        )

    # same comparison as a sweep artifact
    spec = SweepSpec(
        system="generic-ref",
        variable="V",
        vmin=0.0,
        vmax=1.0,
        steps=11,
        series=(
            SeriesSpec(label="n=1", params={"n": 1}),
            SeriesSpec(label="n=3", params={"n": 3}),
            SeriesSpec(label="n=5", params={"n": 5}),
        ),
    )
    result = run_sweep(spec, starts=STARTS)
    emit_csv(result, OUT / "generic_reference.csv")
    emit_svg(result, OUT / "generic_reference.svg", title="reference coarsening")
    print()
    print(f"wrote {OUT / 'generic_reference.csv'} and .svg")


if __name__ == "__main__":
    main()
