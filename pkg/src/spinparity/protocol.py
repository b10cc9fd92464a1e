"""Parity determination: base run, zero-signal decision, and the integer
bisection over offset sizes that pins down the parity in at most n runs.

The base run reads the per-spin mark sums.  If any spin reads zero the mark
count is even and the answer is immediate.  Otherwise the spin-1 amplitude,
viewed as a function of the offset size M, starts at the spin-1 mark sum,
moves by exactly +/-1 per unit of M, and reaches a non-positive (branch-wise)
value at M = N/2, so a zero crossing exists and ordinary interval bisection
lands on one; its parity equals the parity of the mark count.  A bracket of
width one whose left edge is still nonzero forces the zero at its right edge
without spending another run, which is what keeps the total at n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .ensemble import run_sequence
from .oracles import PhaseFunction, ShiftSpec
from .spinops import SpinSystem


@dataclass(frozen=True)
class IterationRecord:
    """One sequence execution: offset tried (None for the base run), branch
    sign, observed amplitudes, and the decision taken."""

    m: int
    sign: int
    amplitudes: tuple
    decision: str


@dataclass(frozen=True)
class RunTrace:
    iterations: tuple
    uo_calls: int
    uf_calls: int
    parity: int
    m_star: int

    def __post_init__(self):
        if self.parity not in (+1, -1):
            raise ValueError("parity must be +1 or -1")
        if self.uo_calls != len(self.iterations):
            raise ValueError("oracle-call count must match the iteration count")
        if self.uf_calls != 2 * self.uo_calls:
            raise ValueError("each oracle application counts as two sign-oracle calls")


def solve_parity(
    system: SpinSystem,
    f: PhaseFunction,
    threshold: float = 1e-9,
    snr_mode: bool = False,
) -> RunTrace:
    """Determine the parity of ``f`` in at most ``n`` sequence runs.

    In SNR mode amplitudes are recorded at their physically detectable scale
    and ``threshold`` acts as the detection floor; branch decisions only use
    signs and zero flags, so the control flow is unchanged.
    """
    if f.n != system.n:
        raise ValueError(f"truth table is for n={f.n}, system has n={system.n}")
    n = system.n
    half = 1 << (n - 1)
    records = []

    sig = run_sequence(system, f, threshold=threshold, snr_mode=snr_mode)
    if any(sig.zero_flags):
        zeros = [k + 1 for k, z in enumerate(sig.zero_flags) if z]
        records.append(
            IterationRecord(None, None, sig.amplitudes,
                            f"zero signal on spin(s) {zeros}; mark count is even")
        )
        return RunTrace(tuple(records), len(records), 2 * len(records), +1, None)

    sign = +1 if sig.amplitudes[0] > 0 else -1
    records.append(
        IterationRecord(None, None, sig.amplitudes,
                        f"no zero signal; bracketing spin 1 with branch sign {sign:+d}")
    )

    lo, hi = 0, half
    m_star = None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        probe = run_sequence(
            system, f, shift=ShiftSpec(mid, sign), threshold=threshold, snr_mode=snr_mode
        )
        a = probe.amplitudes[0]
        if probe.zero_flags[0]:
            m_star = mid
            decision = f"offset {mid} nulls the spin-1 signal"
        elif sign * a > 0:
            lo = mid
            decision = f"spin-1 amplitude {a:+.12g}; zero above offset {mid}"
        else:
            hi = mid
            decision = f"spin-1 amplitude {a:+.12g}; zero below offset {mid}"
        records.append(IterationRecord(mid, sign, probe.amplitudes, decision))
        if m_star is not None:
            break
    if m_star is None:
        # Bracket of width one: the walk moves by one per unit offset, so a
        # nonzero left edge and the crossing guarantee force the zero at hi.
        m_star = hi
    if not 1 <= m_star <= half or len(records) > n:
        raise RuntimeError(
            "bisection invariant violated; signal conventions are inconsistent"
        )
    parity = +1 if m_star % 2 == 0 else -1
    return RunTrace(tuple(records), len(records), 2 * len(records), parity, m_star)


def projected_call_counts(n: int) -> dict:
    """Worst-case oracle budget: n sequence runs, each consuming one
    90-degree oracle application, i.e. two sign-oracle calls."""
    if n < 1:
        raise ValueError("spin count must be >= 1")
    return {"uo": n, "uf": 2 * n}
