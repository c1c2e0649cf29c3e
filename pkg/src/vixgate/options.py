"""Option-chain data model and CSV ingestion for a single expiry."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .errors import DataError

__all__ = ["OptionSide", "OptionQuote", "OptionChain", "load_option_chain"]


class OptionSide(str, Enum):
    CALL = "C"
    PUT = "P"


@dataclass(frozen=True)
class OptionQuote:
    """One strike's midprice on one side."""

    strike: float
    side: OptionSide
    mid: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "strike", float(self.strike))
        object.__setattr__(self, "mid", float(self.mid))
        if not (math.isfinite(self.strike) and self.strike > 0):
            raise ValueError(f"strike must be positive, got {self.strike!r}")
        if not (math.isfinite(self.mid) and self.mid >= 0):
            raise ValueError(f"midprice must be >= 0, got {self.mid!r}")


@dataclass(frozen=True)
class OptionChain:
    """All quotes for one expiry plus the inputs of the forward formula.

    ``expiry_years`` is the time to expiry in years and ``rate`` the
    annualized continuously-compounded risk-free rate. The at-the-money
    call/put mids and the seed strike may be supplied explicitly; when
    absent they are derived from strikes quoting both sides.
    """

    expiry_years: float
    rate: float
    quotes: tuple[OptionQuote, ...]
    atm_call_mid: float | None = None
    atm_put_mid: float | None = None
    atm_strike_hint: float | None = None

    def __post_init__(self) -> None:
        if not (math.isfinite(self.expiry_years) and self.expiry_years > 0):
            raise ValueError(
                f"expiry must be a positive number of years, got {self.expiry_years!r}"
            )
        if not math.isfinite(self.rate):
            raise ValueError(f"rate must be finite, got {self.rate!r}")
        seen: set[tuple[float, OptionSide]] = set()
        for q in self.quotes:
            key = (q.strike, q.side)
            if key in seen:
                raise DataError(
                    f"duplicate quote for strike {q.strike} side {q.side.value}"
                )
            seen.add(key)
        if len({q.strike for q in self.quotes}) < 3:
            raise DataError("chain needs at least 3 distinct strikes")

    def side_mids(self, side: OptionSide) -> dict[float, float]:
        return {q.strike: q.mid for q in self.quotes if q.side is side}


def load_option_chain(
    path: str | Path,
    expiry_years: float,
    rate: float,
    atm_call_mid: float | None = None,
    atm_put_mid: float | None = None,
    atm_strike_hint: float | None = None,
) -> OptionChain:
    """Load a ``strike,side,mid`` CSV (side C or P) into an OptionChain.

    Chain-level fields (expiry, rate, ATM mids, seed strike) come from the
    caller, not the file.
    """
    path = Path(path)
    quotes: list[OptionQuote] = []
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file, expected 'strike,side,mid' header")
        if [c.strip().lower() for c in header] != ["strike", "side", "mid"]:
            raise DataError(
                f"{path}:1: expected header 'strike,side,mid', got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise DataError(
                    f"{path}:{lineno}: expected 3 columns, got {len(row)}"
                )
            try:
                strike = float(row[0])
            except ValueError as exc:
                raise DataError(
                    f"{path}:{lineno}: unparsable strike {row[0]!r}"
                ) from exc
            side_text = row[1].strip().upper()
            if side_text not in ("C", "P"):
                raise DataError(
                    f"{path}:{lineno}: side must be C or P, got {row[1]!r}"
                )
            try:
                mid = float(row[2])
            except ValueError as exc:
                raise DataError(
                    f"{path}:{lineno}: unparsable midprice {row[2]!r}"
                ) from exc
            try:
                quotes.append(OptionQuote(strike, OptionSide(side_text), mid))
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: {exc}") from exc
    try:
        return OptionChain(
            expiry_years,
            rate,
            tuple(quotes),
            atm_call_mid=atm_call_mid,
            atm_put_mid=atm_put_mid,
            atm_strike_hint=atm_strike_hint,
        )
    except DataError as exc:
        raise DataError(f"{path}: {exc}") from exc
