###############################################################################
# IMPORTS
###############################################################################

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional, TextIO

import numpy as np
import pandas as pd

SCHEMA = 'v1'

PASS, FAIL, INCONCLUSIVE = 'pass', 'fail', 'inconclusive'

# Exit statuses shared with the command line.
EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_FAILURE = 0, 1, 2, 3, 4

###############################################################################
# SERIALIZATION
###############################################################################

def plain(value: Any) -> Any:
    """
    Converts witness data into JSON-ready values. Fractions become "p/q"
    strings so that exact values survive the round trip.
    """

    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        return float(value)
    if isinstance(value, np.ndarray):
        return [plain(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return value

###############################################################################
# RECORDS
###############################################################################

@dataclass(frozen=True)
class ClaimRecord:
    """
    One line of a report.

    Attributes:
        kind (str): 'claim', 'observation' or 'error'.
        name (str): What was checked or observed.
        status (str or None): pass/fail/inconclusive for claims, None otherwise.
        margin (float or None): Signed distance from the claim's boundary;
            positive when the claim holds.
        witness (dict): Supporting data.
    """

    kind: str
    name: str
    status: Optional[str] = None
    margin: Optional[float] = None
    witness: dict = field(default_factory=dict)

    def to_dict(self, campaign: str) -> dict:
        # Field order is fixed for byte-identical output.
        out = {'schema': SCHEMA, 'campaign': campaign, 'type': self.kind, 'name': self.name}
        if self.kind == 'claim':
            out['status'] = self.status
            out['margin'] = self.margin
        out['witness'] = plain(self.witness)
        return out


def judge(margin: float, threshold: float) -> str:
    """
    Inconclusive when |margin| < threshold, otherwise decided by its sign.
    """

    if abs(margin) < threshold:
        return INCONCLUSIVE
    return PASS if margin > 0 else FAIL

###############################################################################
# REPORT
###############################################################################

class VerificationReport:
    """
    Ordered collection of claim, observation and error records for one campaign.

    Attributes:
        campaign (str): Campaign identifier.
        params (dict): Parameters the campaign ran with.
        records (list of ClaimRecord): Records in the order they were produced.
        threshold (float): Margin below which a claim is inconclusive.

    Methods:
        check(name, margin, witness): Records a claim judged by its margin.
        assert_true(name, holds, witness): Records a claim judged by a boolean.
        observe(name, witness): Records an informative observation.
        error(name, witness): Records a per-item error.
        counts(): Pass/fail/inconclusive totals.
        to_frame(): Records as a pandas DataFrame.
        write(stream): Writes JSON Lines, summary last.
        exit_status(strict): Exit code for the command line.
    """

    def __init__(self, campaign: str, params: Optional[dict] = None, threshold: float = 1e-6):
        self.campaign = campaign
        self.params = dict(params or {})
        self.threshold = threshold
        self.records: list[ClaimRecord] = []
        self.extra_summary: dict = {}

    ###########################################################################
    # RECORDING
    ###########################################################################

    def check(self, name: str, margin: float, witness: Optional[dict] = None, threshold: Optional[float] = None) -> str:
        margin = float(margin)
        status = judge(margin, self.threshold if threshold is None else threshold)
        self.records.append(ClaimRecord('claim', name, status, margin, dict(witness or {})))
        return status

    def assert_true(self, name: str, holds: bool, witness: Optional[dict] = None) -> str:
        status = PASS if holds else FAIL
        self.records.append(ClaimRecord('claim', name, status, None, dict(witness or {})))
        return status

    def observe(self, name: str, witness: Optional[dict] = None):
        self.records.append(ClaimRecord('observation', name, witness=dict(witness or {})))

    def error(self, name: str, witness: Optional[dict] = None):
        self.records.append(ClaimRecord('error', name, witness=dict(witness or {})))

    def extend(self, records: Iterable[ClaimRecord]):
        self.records.extend(records)

    def merge(self, other: VerificationReport):
        # Records and summary extras are appended; params stay those of self.
        self.records.extend(other.records)
        self.extra_summary.update(other.extra_summary)

    ###########################################################################
    # SUMMARIES
    ###########################################################################

    @property
    def claims(self) -> list[ClaimRecord]:
        return [r for r in self.records if r.kind == 'claim']

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
        for record in self.claims:
            out[record.status] += 1
        return out

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(r.kind, r.name, r.status, r.margin) for r in self.records],
            columns=['type', 'name', 'status', 'margin'],
        )

    def summary(self) -> dict:
        frame = self.to_frame()
        claims = frame[frame['type'] == 'claim']
        margins = claims['margin'].dropna()
        out = {
            'schema': SCHEMA,
            'campaign': self.campaign,
            'type': 'summary',
            'counts': self.counts(),
            'observations': int((frame['type'] == 'observation').sum()),
            'errors': int((frame['type'] == 'error').sum()),
            'min_margin': float(margins.min()) if len(margins) else None,
            'params': plain(self.params),
        }
        out.update(plain(self.extra_summary))
        return out

    def status_table(self) -> pd.DataFrame:
        """
        Claim counts per claim name and status.
        """

        claims = self.to_frame().query("type == 'claim'")
        return claims.pivot_table(index='name', columns='status', values='type', aggfunc='count', fill_value=0)

    ###########################################################################
    # OUTPUT
    ###########################################################################

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.to_dict(self.campaign)) for r in self.records]
        lines.append(json.dumps(self.summary()))
        return '\n'.join(lines) + '\n'

    def write(self, stream: TextIO):
        stream.write(self.to_jsonl())

    def to_text(self) -> str:
        counts = self.counts()
        lines = [f"{self.campaign}: {counts[PASS]} pass, {counts[FAIL]} fail, {counts[INCONCLUSIVE]} inconclusive"]
        for record in self.records:
            if record.kind == 'claim' and record.status != PASS:
                lines.append(f"  {record.status.upper()} {record.name} margin={record.margin} {plain(record.witness)}")
            elif record.kind == 'error':
                lines.append(f"  ERROR {record.name} {plain(record.witness)}")
        return '\n'.join(lines) + '\n'

    def exit_status(self, strict: bool = False) -> int:
        counts = self.counts()
        if counts[FAIL]:
            return EXIT_FAILURE
        if strict and counts[INCONCLUSIVE]:
            return EXIT_INCONCLUSIVE
        return EXIT_OK


def read_jsonl(stream: TextIO) -> pd.DataFrame:
    """
    Loads a report written by VerificationReport.write.
    """

    return pd.read_json(stream, lines=True)
