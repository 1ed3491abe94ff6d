"""Auction records, slot configurations, and welfare accounting.

An auction awards slots in decreasing order of predicted eCPM (bid times
predicted CTR).  Welfare is the position-multiplier-weighted sum of the
ground-truth eCPMs of the winners, so it measures how much value the chosen
ranking actually delivers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import InputError
from .serialize import fmt


@dataclass
class AdRecord:
    """One ad: feature vector, CPC bid, and optional ground truth."""

    features: np.ndarray
    bid: float
    true_ctr: Optional[float] = None
    click: Optional[int] = None

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        if self.features.ndim != 1:
            raise InputError("features must be a 1-d vector")
        if not np.all(np.isfinite(self.features)):
            raise InputError("features must be finite")
        self.bid = float(self.bid)
        if not (self.bid > 0.0 and math.isfinite(self.bid)):
            raise InputError(f"bid must be positive and finite, got {self.bid}")
        if self.true_ctr is not None:
            self.true_ctr = float(self.true_ctr)
            if not 0.0 <= self.true_ctr <= 1.0:
                raise InputError(f"true_ctr must lie in [0, 1], got {self.true_ctr}")
        if self.click is not None:
            if self.click not in (0, 1):
                raise InputError(f"click must be 0 or 1, got {self.click}")
            self.click = int(self.click)


class AuctionBatch:
    """An ordered collection of ads forming one auction or one minibatch.

    Stores column arrays internally.  ``true_ctrs`` and ``clicks`` are only
    available when every ad carries the field; accessing them otherwise is an
    input error.
    """

    def __init__(self, features, bids, true_ctrs=None, clicks=None):
        features = np.array(features, dtype=float)
        if features.ndim != 2:
            raise InputError("features must be an (n, d) matrix")
        n = features.shape[0]
        bids = np.array(bids, dtype=float).reshape(-1)
        if bids.shape != (n,):
            raise InputError("bids length must match the number of ads")
        if n and not (np.all(np.isfinite(bids)) and np.all(bids > 0)):
            raise InputError("bids must be positive and finite")
        if not np.all(np.isfinite(features)):
            raise InputError("features must be finite")
        if true_ctrs is not None:
            true_ctrs = np.array(true_ctrs, dtype=float).reshape(-1)
            if true_ctrs.shape != (n,):
                raise InputError("true_ctrs length must match the number of ads")
            if n and (true_ctrs.min() < 0.0 or true_ctrs.max() > 1.0):
                raise InputError("true_ctrs must lie in [0, 1]")
        if clicks is not None:
            clicks = np.array(clicks)
            if clicks.shape != (n,):
                raise InputError("clicks length must match the number of ads")
            if n and not np.all(np.isin(clicks, (0, 1))):
                raise InputError("clicks must be 0 or 1")
            clicks = clicks.astype(np.int64)
        self._features = features
        self._bids = bids
        self._true_ctrs = true_ctrs
        self._clicks = clicks

    @classmethod
    def from_ads(cls, ads: Sequence[AdRecord]) -> "AuctionBatch":
        ads = list(ads)
        if not ads:
            return cls(np.zeros((0, 0)), np.zeros(0))
        has_ctr = [a.true_ctr is not None for a in ads]
        has_click = [a.click is not None for a in ads]
        if any(has_ctr) and not all(has_ctr):
            raise InputError("true_ctr must be present on all ads or none")
        if any(has_click) and not all(has_click):
            raise InputError("click must be present on all ads or none")
        return cls(
            np.stack([a.features for a in ads]),
            np.array([a.bid for a in ads]),
            np.array([a.true_ctr for a in ads]) if all(has_ctr) else None,
            np.array([a.click for a in ads]) if all(has_click) else None,
        )

    def __len__(self) -> int:
        return self._features.shape[0]

    def __getitem__(self, i: int) -> AdRecord:
        return AdRecord(
            features=self._features[i].copy(),
            bid=float(self._bids[i]),
            true_ctr=None if self._true_ctrs is None else float(self._true_ctrs[i]),
            click=None if self._clicks is None else int(self._clicks[i]),
        )

    def __iter__(self) -> Iterator[AdRecord]:
        for i in range(len(self)):
            yield self[i]

    @property
    def features(self) -> np.ndarray:
        return self._features

    @property
    def bids(self) -> np.ndarray:
        return self._bids

    @property
    def has_true_ctrs(self) -> bool:
        return self._true_ctrs is not None

    @property
    def has_clicks(self) -> bool:
        return self._clicks is not None

    @property
    def true_ctrs(self) -> np.ndarray:
        if self._true_ctrs is None:
            raise InputError("batch has no ground-truth CTRs")
        return self._true_ctrs

    @property
    def clicks(self) -> np.ndarray:
        if self._clicks is None:
            raise InputError("batch has no click labels")
        return self._clicks

    def take(self, indices) -> "AuctionBatch":
        """Sub-batch at the given positions, order preserved."""
        idx = np.asarray(indices, dtype=np.int64)
        return AuctionBatch(
            self._features[idx],
            self._bids[idx],
            None if self._true_ctrs is None else self._true_ctrs[idx],
            None if self._clicks is None else self._clicks[idx],
        )

    def with_clicks(self, clicks) -> "AuctionBatch":
        return AuctionBatch(self._features, self._bids, self._true_ctrs, clicks)

    def to_jsonl(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for i in range(len(self)):
                fh.write(self._ad_line(i))
                fh.write("\n")

    def _ad_line(self, i: int) -> str:
        parts = [
            '"features": [' + ", ".join(fmt(v) for v in self._features[i]) + "]",
            f'"bid": {fmt(self._bids[i])}',
        ]
        if self._true_ctrs is not None:
            parts.append(f'"ctr": {fmt(self._true_ctrs[i])}')
        if self._clicks is not None:
            parts.append(f'"click": {int(self._clicks[i])}')
        return "{" + ", ".join(parts) + "}"

    @classmethod
    def from_jsonl(cls, path) -> "AuctionBatch":
        ads = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                doc = json.loads(line)
                ads.append(
                    AdRecord(
                        features=np.asarray(doc["features"], dtype=float),
                        bid=doc["bid"],
                        true_ctr=doc.get("ctr"),
                        click=doc.get("click"),
                    )
                )
        return cls.from_ads(ads)


def save_auctions(auctions: Sequence[AuctionBatch], directory) -> None:
    """Persist a list of auctions as one JSON-lines file per auction."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    for i, auction in enumerate(auctions):
        auction.to_jsonl(directory / f"auction_{i:05d}.jsonl")


def load_auctions(directory) -> list[AuctionBatch]:
    directory = Path(directory)
    paths = sorted(directory.glob("auction_*.jsonl"))
    if not paths:
        raise InputError(f"no auction files found under {directory}")
    return [AuctionBatch.from_jsonl(p) for p in paths]


@dataclass
class SlotConfig:
    """Position multipliers for the K slots, alpha_1 = 1 and non-increasing."""

    multipliers: np.ndarray

    def __post_init__(self):
        self.multipliers = np.asarray(self.multipliers, dtype=float).reshape(-1)
        if self.multipliers.size == 0:
            raise InputError("at least one slot is required")
        if self.multipliers[0] != 1.0:
            raise InputError("the first slot multiplier must be exactly 1")
        if np.any(np.diff(self.multipliers) > 0):
            raise InputError("slot multipliers must be non-increasing")
        if self.multipliers.min() < 0.0 or self.multipliers.max() > 1.0:
            raise InputError("slot multipliers must lie in [0, 1]")

    def __len__(self) -> int:
        return int(self.multipliers.size)

    @classmethod
    def single(cls) -> "SlotConfig":
        return cls(np.array([1.0]))


def rank_by_predicted_ecpm(batch: AuctionBatch, pctrs) -> np.ndarray:
    """Indices sorted by predicted eCPM descending, ties by original index."""
    pctrs = np.asarray(pctrs, dtype=float).reshape(-1)
    if pctrs.shape != (len(batch),):
        raise InputError("pctrs length must match the number of ads")
    return np.argsort(-batch.bids * pctrs, kind="stable")


def welfare(batch: AuctionBatch, pctrs, slots: SlotConfig) -> float:
    """Ground-truth welfare of the ranking induced by ``pctrs``."""
    k = len(slots)
    if k > len(batch):
        raise InputError(f"{k} slots but only {len(batch)} ads")
    p = batch.true_ctrs
    winners = rank_by_predicted_ecpm(batch, pctrs)[:k]
    return float(np.sum(slots.multipliers * batch.bids[winners] * p[winners]))


def optimal_welfare(batch: AuctionBatch, slots: SlotConfig) -> float:
    """Welfare achieved by ranking on the ground-truth eCPMs themselves."""
    return welfare(batch, batch.true_ctrs, slots)


def welfare_suboptimality_pairwise(batch: AuctionBatch, pctrs) -> float:
    """Single-slot welfare gap written as a double sum over ordered pairs.

    Equals ``optimal_welfare - welfare`` for K = 1 exactly: the only ordered
    pair that can contribute is (true winner, predicted winner), and the
    eCPM indicator on that pair always fires because the predicted winner has
    the maximal predicted eCPM.
    """
    pctrs = np.asarray(pctrs, dtype=float).reshape(-1)
    if pctrs.shape != (len(batch),):
        raise InputError("pctrs length must match the number of ads")
    true_ecpm = batch.bids * batch.true_ctrs
    pred_ecpm = batch.bids * pctrs
    i_star = int(np.argmax(true_ecpm))
    j_star = int(rank_by_predicted_ecpm(batch, pctrs)[0])
    if pred_ecpm[i_star] <= pred_ecpm[j_star]:
        return float(true_ecpm[i_star] - true_ecpm[j_star])
    return 0.0
