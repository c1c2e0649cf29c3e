"""Volatility index from a weighted strip of out-of-the-money options.

One expiry only: each out-of-the-money midprice contributes its strike
spacing over strike squared, grossed up at the risk-free rate, and a small
correction removes the bias from the forward sitting between strikes.
There is no blending of two expiries to a constant tenor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DataError, DegenerateError
from .options import OptionChain, OptionSide

__all__ = ["StripStrike", "VixComputation", "forward_price", "compute_vix"]

# Floating-point guard: variance this slightly below zero is clamped to
# zero; anything worse signals inconsistent quotes.
NEGATIVE_VARIANCE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class StripStrike:
    """One contributing strike: its spacing weight and the midprice used."""

    strike: float
    spacing: float
    mid: float


@dataclass(frozen=True)
class VixComputation:
    sigma_squared: float
    vix_level: float
    forward: float
    x0: float
    strikes: tuple[StripStrike, ...]


def _resolve_atm(chain: OptionChain) -> tuple[float, float, float]:
    """Pick the seed strike and the ATM call/put mids for the forward.

    The seed is the explicit hint when given, otherwise the strike with
    the smallest call-put mid gap among strikes quoting both sides.
    """
    calls = chain.side_mids(OptionSide.CALL)
    puts = chain.side_mids(OptionSide.PUT)
    seed = chain.atm_strike_hint
    if seed is None:
        paired = sorted(set(calls) & set(puts))
        if not paired:
            raise DataError(
                "cannot seed the forward price: no ATM strike hint and no "
                "strike quotes both a call and a put"
            )
        seed = min(paired, key=lambda k: (abs(calls[k] - puts[k]), k))
    c0 = chain.atm_call_mid if chain.atm_call_mid is not None else calls.get(seed)
    p0 = chain.atm_put_mid if chain.atm_put_mid is not None else puts.get(seed)
    if c0 is None or p0 is None:
        raise DataError(
            f"ATM quotes required: no call/put midprices supplied and none "
            f"quoted at seed strike {seed}"
        )
    return seed, c0, p0


def forward_price(chain: OptionChain) -> float:
    """Implied forward: seed strike plus the grown call-put mid gap."""
    seed, c0, p0 = _resolve_atm(chain)
    return seed + math.exp(chain.rate * chain.expiry_years) * (c0 - p0)


def compute_vix(chain: OptionChain, literal_dx: bool = False) -> VixComputation:
    """Compute annualized variance and index level from one option chain.

    Strike selection: puts below the floor strike ``x0`` (largest strike at
    or below the forward), calls above it, and the average of both sides at
    ``x0`` itself. Interior spacings are half the gap between neighbouring
    strikes; the first and last strike use their single-sided gap.

    ``literal_dx=True`` swaps the interior spacing for the average of the
    neighbouring strike *levels* rather than half their difference. That
    variant carries price units and inflates the result; it exists only so
    the two conventions can be compared side by side.

    Raises:
        DataError: fewer than 3 usable strikes after selection.
        DegenerateError: variance below ``-NEGATIVE_VARIANCE_TOLERANCE``.
    """
    fwd = forward_price(chain)
    calls = chain.side_mids(OptionSide.CALL)
    puts = chain.side_mids(OptionSide.PUT)
    all_strikes = sorted(set(calls) | set(puts))
    at_or_below = [x for x in all_strikes if x <= fwd]
    if not at_or_below:
        raise DataError(
            f"forward {fwd} lies below the lowest strike {all_strikes[0]}; "
            f"no floor strike exists"
        )
    x0 = max(at_or_below)

    selected: list[tuple[float, float]] = []
    for x in all_strikes:
        if x < x0:
            if x in puts:
                selected.append((x, puts[x]))
        elif x > x0:
            if x in calls:
                selected.append((x, calls[x]))
        else:
            if x in calls and x in puts:
                selected.append((x, (calls[x] + puts[x]) / 2.0))
            else:
                selected.append((x, calls.get(x, puts.get(x, 0.0))))
    if len(selected) < 3:
        raise DataError(
            f"need at least 3 usable out-of-the-money strikes, have {len(selected)}"
        )

    xs = [x for x, _ in selected]
    spacings = []
    for i in range(len(xs)):
        if i == 0:
            spacings.append(xs[1] - xs[0])
        elif i == len(xs) - 1:
            spacings.append(xs[-1] - xs[-2])
        elif literal_dx:
            spacings.append((xs[i + 1] + xs[i - 1]) / 2.0)
        else:
            spacings.append((xs[i + 1] - xs[i - 1]) / 2.0)

    t = chain.expiry_years
    growth = math.exp(chain.rate * t)
    # fsum gives the exactly rounded strip total, so the result does not
    # depend on quote order and zero-mid strikes contribute exactly nothing.
    strip_total = math.fsum(
        spacing / (x * x) * growth * mid
        for (x, mid), spacing in zip(selected, spacings)
    )
    sigma_squared = (2.0 / t) * strip_total - (1.0 / t) * (fwd / x0 - 1.0) ** 2
    if sigma_squared < 0.0:
        if sigma_squared >= -NEGATIVE_VARIANCE_TOLERANCE:
            sigma_squared = 0.0
        else:
            raise DegenerateError(
                f"variance {sigma_squared} is negative beyond tolerance; "
                f"the quotes are inconsistent"
            )
    return VixComputation(
        sigma_squared=sigma_squared,
        vix_level=100.0 * math.sqrt(sigma_squared),
        forward=fwd,
        x0=x0,
        strikes=tuple(
            StripStrike(x, spacing, mid)
            for (x, mid), spacing in zip(selected, spacings)
        ),
    )
