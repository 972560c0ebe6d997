"""Event-sourced service for conducting a live dose-finding trial.

Every trial is an append-only JSON-lines log of events (creation,
enrollments, DLTs, follow-up completions, notes).  State, dose
recommendations, and what-if answers are pure functions of (log, as-of
time), so replaying the log after a restart reproduces them exactly.
Dose decisions run through the same design engine as the simulator.

Calendar timestamps are ISO-8601; follow-up is measured in configured
time units (weeks by default) from enrollment to the as-of instant and
capped at the assessment window.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Mapping, Optional, Sequence

from .config import ConfigError, design_from_dict, design_to_dict
from .designs import (
    MODEL_BASED,
    DesignConfig,
    aw_records,
    follow_up_status,
    next_dose,
    tite_records,
)
from .crm import posterior_mean_tox

EVENT_KINDS = (
    "trial-created",
    "patient-enrolled",
    "dlt-observed",
    "followup-completed",
    "note",
)

TIME_UNITS = {"weeks": 7 * 86400.0, "days": 86400.0}


class ConductError(Exception):
    """Base for service rejections, mapped to HTTP statuses by the API."""


class UnknownTrialError(ConductError):
    pass


class InvalidEventError(ConductError):
    """Malformed event payload."""


class ConflictError(ConductError):
    """Event or query contradicts the current trial state."""


class CorruptLogError(ConductError):
    """Unreadable event log; carries the offending file and line."""

    def __init__(self, path: Path, line_no: int, reason: str) -> None:
        super().__init__(f"{path}:{line_no}: {reason}")
        self.path = path
        self.line_no = line_no


def parse_timestamp(value: str, label: str = "timestamp") -> datetime:
    """ISO-8601 timestamp, naive values taken as UTC."""
    if not isinstance(value, str):
        raise InvalidEventError(f"{label} must be an ISO-8601 string")
    try:
        ts = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError as exc:
        raise InvalidEventError(f"{label}: {exc}") from exc
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc)


@dataclass(frozen=True)
class StoredEvent:
    seq: int
    kind: str
    timestamp: datetime
    payload: dict
    recorded_at: datetime
    dedupe_token: Optional[str] = None

    def to_json(self) -> dict:
        body = {
            "seq": self.seq,
            "kind": self.kind,
            "timestamp": self.timestamp.isoformat(),
            "recorded_at": self.recorded_at.isoformat(),
            **self.payload,
        }
        if self.dedupe_token is not None:
            body["dedupe_token"] = self.dedupe_token
        return body


@dataclass
class PatientRow:
    patient_id: str
    dose: int
    enrolled_at: datetime
    dlt_at: Optional[datetime] = None
    completed_at: Optional[datetime] = None

    @property
    def terminal(self) -> bool:
        return self.dlt_at is not None or self.completed_at is not None


@dataclass
class _ModelPatient:
    """Duck-typed patient for the design engine, in model time units."""

    dose: int
    enroll_time: float
    dlt_time: Optional[float]


@dataclass
class _ModelState:
    patients: list
    n_doses: int


@dataclass
class Trial:
    """In-memory view of one trial, rebuilt from its event log."""

    trial_id: str
    design: DesignConfig
    time_unit: str
    epoch: datetime
    events: list[StoredEvent] = field(default_factory=list)
    patients: dict[str, PatientRow] = field(default_factory=dict)
    order: list[str] = field(default_factory=list)
    tokens: dict[str, int] = field(default_factory=dict)

    @property
    def last_timestamp(self) -> datetime:
        return self.events[-1].timestamp if self.events else self.epoch

    @property
    def next_seq(self) -> int:
        return len(self.events) + 1

    def clock_at(self, instant: datetime) -> float:
        return (instant - self.epoch).total_seconds() / TIME_UNITS[self.time_unit]

    def model_state(self, as_of: datetime) -> _ModelState:
        """Design-engine state visible at ``as_of``: enrolled patients only."""
        patients = []
        for pid in self.order:
            row = self.patients[pid]
            if row.enrolled_at > as_of:
                continue
            dlt_time = (
                None
                if row.dlt_at is None
                else self.clock_at(row.dlt_at) - self.clock_at(row.enrolled_at)
            )
            patients.append(
                _ModelPatient(row.dose, self.clock_at(row.enrolled_at), dlt_time)
            )
        return _ModelState(patients, len(self.design.skeleton))


def validate_event(trial: Trial, kind: str, timestamp: datetime, payload: Mapping) -> dict:
    """Check one event against the trial state; return the storable payload."""
    if kind not in EVENT_KINDS or kind == "trial-created":
        raise InvalidEventError(f"unknown event kind {kind!r}")
    if timestamp < trial.last_timestamp:
        raise ConflictError(
            f"timestamp {timestamp.isoformat()} precedes the last event at "
            f"{trial.last_timestamp.isoformat()}"
        )
    if kind == "note":
        text = payload.get("text")
        if not isinstance(text, str) or not text:
            raise InvalidEventError("note events need nonempty text")
        return {"text": text}

    patient_id = payload.get("patient_id")
    if not isinstance(patient_id, str) or not patient_id:
        raise InvalidEventError("patient events need a patient_id string")

    if kind == "patient-enrolled":
        if patient_id in trial.patients:
            raise ConflictError(f"patient {patient_id!r} is already enrolled")
        dose = payload.get("dose")
        if not isinstance(dose, int) or isinstance(dose, bool):
            raise InvalidEventError("enrollment needs an integer dose")
        if not 1 <= dose <= len(trial.design.skeleton):
            raise InvalidEventError(
                f"dose {dose} outside 1..{len(trial.design.skeleton)}"
            )
        return {"patient_id": patient_id, "dose": dose}

    row = trial.patients.get(patient_id)
    if row is None:
        raise ConflictError(f"patient {patient_id!r} was never enrolled")
    if row.terminal:
        raise ConflictError(f"patient {patient_id!r} already has a terminal event")
    window = row.enrolled_at + _window_delta(trial)
    if kind == "dlt-observed":
        if not row.enrolled_at <= timestamp <= window:
            raise ConflictError(
                "DLT timestamp outside the patient's assessment window"
            )
    else:  # followup-completed
        if timestamp < window:
            raise ConflictError(
                "follow-up completion before the assessment window has elapsed"
            )
    return {"patient_id": patient_id}


def _window_delta(trial: Trial) -> timedelta:
    return timedelta(seconds=trial.design.t_max * TIME_UNITS[trial.time_unit])


def apply_event(trial: Trial, event: StoredEvent) -> None:
    trial.events.append(event)
    if event.dedupe_token is not None:
        trial.tokens[event.dedupe_token] = event.seq
    if event.kind == "patient-enrolled":
        pid = event.payload["patient_id"]
        trial.patients[pid] = PatientRow(
            pid, event.payload["dose"], event.timestamp
        )
        trial.order.append(pid)
    elif event.kind == "dlt-observed":
        trial.patients[event.payload["patient_id"]].dlt_at = event.timestamp
    elif event.kind == "followup-completed":
        trial.patients[event.payload["patient_id"]].completed_at = event.timestamp


class TrialStore:
    """Append-only JSON-lines persistence, one file per trial, fsync'd."""

    def __init__(self, root) -> None:
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def path_for(self, trial_id: str) -> Path:
        return self.root / f"{trial_id}.jsonl"

    def append(self, trial_id: str, event: StoredEvent) -> None:
        with open(self.path_for(trial_id), "a") as handle:
            handle.write(json.dumps(event.to_json()) + "\n")
            handle.flush()
            os.fsync(handle.fileno())

    def load_all(self) -> dict[str, list[StoredEvent]]:
        logs = {}
        for path in sorted(self.root.glob("*.jsonl")):
            logs[path.stem] = self._load_log(path)
        return logs

    def _load_log(self, path: Path) -> list[StoredEvent]:
        events = []
        with open(path) as handle:
            for line_no, line in enumerate(handle, start=1):
                if not line.strip():
                    raise CorruptLogError(path, line_no, "blank line in event log")
                try:
                    body = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise CorruptLogError(path, line_no, f"invalid JSON: {exc.msg}")
                try:
                    events.append(_event_from_json(body))
                except (KeyError, TypeError, ValueError, InvalidEventError) as exc:
                    raise CorruptLogError(path, line_no, str(exc))
                if events[-1].seq != line_no:
                    raise CorruptLogError(
                        path, line_no,
                        f"sequence number {events[-1].seq} breaks contiguity",
                    )
        return events


def _event_from_json(body: Mapping) -> StoredEvent:
    payload = {
        k: v
        for k, v in body.items()
        if k not in ("seq", "kind", "timestamp", "recorded_at", "dedupe_token")
    }
    kind = body["kind"]
    if kind not in EVENT_KINDS:
        raise ValueError(f"unknown event kind {kind!r}")
    return StoredEvent(
        seq=int(body["seq"]),
        kind=kind,
        timestamp=parse_timestamp(body["timestamp"]),
        payload=payload,
        recorded_at=parse_timestamp(body["recorded_at"]),
        dedupe_token=body.get("dedupe_token"),
    )


class ConductService:
    """All trial operations behind one object; one lock per trial for writes."""

    def __init__(self, root) -> None:
        self.store = TrialStore(root)
        self.trials: dict[str, Trial] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for trial_id, events in self.store.load_all().items():
            self.trials[trial_id] = self._replay(trial_id, events)
            self._locks[trial_id] = threading.Lock()

    @staticmethod
    def _replay(trial_id: str, events: Sequence[StoredEvent]) -> Trial:
        if not events or events[0].kind != "trial-created":
            raise CorruptLogError(
                Path(f"{trial_id}.jsonl"), 1, "log must start with trial-created"
            )
        created = events[0]
        design = design_from_dict(created.payload.get("design", {}))
        time_unit = created.payload.get("time_unit", "weeks")
        if time_unit not in TIME_UNITS:
            raise CorruptLogError(
                Path(f"{trial_id}.jsonl"), 1, f"unknown time unit {time_unit!r}"
            )
        trial = Trial(trial_id, design, time_unit, created.timestamp)
        apply_event(trial, created)
        for event in events[1:]:
            apply_event(trial, event)
        return trial

    def _lock_for(self, trial_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks[trial_id]

    def get_trial(self, trial_id: str) -> Trial:
        trial = self.trials.get(trial_id)
        if trial is None:
            raise UnknownTrialError(f"no trial with id {trial_id!r}")
        return trial

    def create_trial(
        self,
        design_section: Optional[Mapping] = None,
        time_unit: str = "weeks",
        created_at: Optional[str] = None,
        trial_id: Optional[str] = None,
    ) -> str:
        try:
            design = design_from_dict(design_section or {})
        except ConfigError as exc:
            raise InvalidEventError(str(exc)) from exc
        if design.design not in MODEL_BASED:
            raise InvalidEventError(
                "live conduct supports the model-based designs "
                f"{MODEL_BASED}, not {design.design!r}"
            )
        if time_unit not in TIME_UNITS:
            raise InvalidEventError(f"time_unit must be one of {tuple(TIME_UNITS)}")
        trial_id = trial_id or uuid.uuid4().hex[:12]
        if trial_id in self.trials or self.store.path_for(trial_id).exists():
            raise ConflictError(f"trial {trial_id!r} already exists")
        now = datetime.now(timezone.utc)
        timestamp = parse_timestamp(created_at, "created_at") if created_at else now
        event = StoredEvent(
            seq=1,
            kind="trial-created",
            timestamp=timestamp,
            payload={"design": design_to_dict(design), "time_unit": time_unit},
            recorded_at=now,
        )
        trial = Trial(trial_id, design, time_unit, timestamp)
        with self._registry_lock:
            self.trials[trial_id] = trial
            self._locks[trial_id] = threading.Lock()
        self.store.append(trial_id, event)
        apply_event(trial, event)
        return trial_id

    def list_trials(self) -> list[dict]:
        return [
            {
                "trial_id": t.trial_id,
                "design": t.design.design,
                "created_at": t.epoch.isoformat(),
                "n_patients": len(t.patients),
                "n_events": len(t.events),
            }
            for t in self.trials.values()
        ]

    def append_event(self, trial_id: str, body: Mapping) -> dict:
        trial = self.get_trial(trial_id)
        with self._lock_for(trial_id):
            token = body.get("dedupe_token")
            if token is not None and token in trial.tokens:
                return {"seq": trial.tokens[token], "duplicate": True}
            kind = body.get("kind")
            timestamp = parse_timestamp(body.get("timestamp"))
            payload = validate_event(trial, kind, timestamp, body)
            event = StoredEvent(
                seq=trial.next_seq,
                kind=kind,
                timestamp=timestamp,
                payload=payload,
                recorded_at=datetime.now(timezone.utc),
                dedupe_token=token,
            )
            self.store.append(trial_id, event)
            apply_event(trial, event)
            return {"seq": event.seq, "duplicate": False}

    def state_view(self, trial_id: str) -> dict:
        trial = self.get_trial(trial_id)
        now = datetime.now(timezone.utc)
        as_of = max(now, trial.last_timestamp)
        rows = []
        for pid in trial.order:
            row = trial.patients[pid]
            followup = trial.clock_at(as_of) - trial.clock_at(row.enrolled_at)
            rows.append(
                {
                    "patient_id": pid,
                    "dose": row.dose,
                    "enrolled_at": row.enrolled_at.isoformat(),
                    "dlt_at": row.dlt_at.isoformat() if row.dlt_at else None,
                    "completed_at": (
                        row.completed_at.isoformat() if row.completed_at else None
                    ),
                    "followup": min(followup, trial.design.t_max),
                }
            )
        return {
            "trial_id": trial.trial_id,
            "design": design_to_dict(trial.design),
            "time_unit": trial.time_unit,
            "created_at": trial.epoch.isoformat(),
            "patients": rows,
            "events": [e.to_json() for e in trial.events],
        }

    def recommend(self, trial_id: str, as_of: Optional[str] = None) -> dict:
        trial = self.get_trial(trial_id)
        instant = (
            parse_timestamp(as_of, "asOf")
            if as_of
            else max(datetime.now(timezone.utc), trial.last_timestamp)
        )
        if instant < trial.last_timestamp:
            raise ConflictError(
                f"asOf {instant.isoformat()} precedes the last event at "
                f"{trial.last_timestamp.isoformat()}"
            )
        return self._recommendation(trial, instant)

    def _recommendation(self, trial: Trial, instant: datetime) -> dict:
        state = trial.model_state(instant)
        clock = trial.clock_at(instant)
        cfg = trial.design
        decision = next_dose(cfg.design, state, clock, cfg)
        if cfg.design == "tite":
            records = tite_records(state, clock, cfg.t_max)
        else:
            records = aw_records(state, clock, cfg)
        summary = posterior_mean_tox(
            records, cfg.skeleton, cfg.alpha_prior, cfg.quadrature
        )
        weights = []
        for pid, patient, record in zip(trial.order, state.patients, records):
            status, followup = follow_up_status(patient, clock, cfg.t_max)
            weights.append(
                {
                    "patient_id": pid,
                    "dose": patient.dose,
                    "followup": followup,
                    "status": status,
                    "event_coefficient": record.event_weight,
                    "nonevent_coefficient": record.nonevent_weight,
                }
            )
        return {
            "trial_id": trial.trial_id,
            "as_of": instant.isoformat(),
            "clock": clock,
            "design": cfg.design,
            "recommended_dose": decision.dose,
            "decision": decision.kind.value,
            "rationale": decision.rationale,
            "posterior_mean_tox": list(summary.mean_tox),
            "target": cfg.target,
            "weights": weights,
            "safety": {
                "no_skip": cfg.safety.no_skip,
                "min_before_deescalation": cfg.safety.min_before_deescalation,
                "deescalation_scope": cfg.safety.deescalation_scope,
                "highest_tried": max((p.dose for p in state.patients), default=0),
            },
        }

    def what_if(self, trial_id: str, query: Mapping) -> dict:
        trial = self.get_trial(trial_id)
        events = query.get("events", [])
        if not isinstance(events, list):
            raise InvalidEventError("what-if events must be a list")
        shadow = self._replay(trial.trial_id, list(trial.events))
        for body in events:
            if not isinstance(body, Mapping):
                raise InvalidEventError("each hypothetical event must be an object")
            kind = body.get("kind")
            timestamp = parse_timestamp(body.get("timestamp"))
            payload = validate_event(shadow, kind, timestamp, body)
            apply_event(
                shadow,
                StoredEvent(
                    seq=shadow.next_seq,
                    kind=kind,
                    timestamp=timestamp,
                    payload=payload,
                    recorded_at=timestamp,
                ),
            )
        as_of = query.get("as_of")
        instant = (
            parse_timestamp(as_of, "as_of")
            if as_of
            else max(datetime.now(timezone.utc), shadow.last_timestamp)
        )
        if instant < shadow.last_timestamp:
            raise ConflictError("as_of precedes a hypothetical event")
        result = self._recommendation(shadow, instant)
        result["hypothetical"] = True
        return result


def create_app(state_dir, static_dir=None):
    """FastAPI app over a ConductService rooted at ``state_dir``.

    Raises CorruptLogError before serving anything if the stored event
    logs do not replay cleanly.
    """
    from fastapi import Body, FastAPI, Request
    from fastapi.responses import JSONResponse

    service = ConductService(state_dir)
    app = FastAPI(title="awtite conduct", version="1")
    app.state.service = service

    def _error(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(
            status_code=status, content={"code": code, "message": message}
        )

    @app.exception_handler(InvalidEventError)
    async def _invalid(request: Request, exc: InvalidEventError):
        return _error(400, "invalid", str(exc))

    @app.exception_handler(UnknownTrialError)
    async def _missing(request: Request, exc: UnknownTrialError):
        return _error(404, "not-found", str(exc))

    @app.exception_handler(ConflictError)
    async def _conflict(request: Request, exc: ConflictError):
        return _error(409, "conflict", str(exc))

    @app.post("/trials", status_code=201)
    def create_trial(body: dict = Body(default={})):
        trial_id = service.create_trial(
            design_section=body.get("design"),
            time_unit=body.get("time_unit", "weeks"),
            created_at=body.get("created_at"),
            trial_id=body.get("trial_id"),
        )
        return {"trial_id": trial_id}

    @app.get("/trials")
    def list_trials():
        return service.list_trials()

    @app.post("/trials/{trial_id}/events")
    def append_event(trial_id: str, body: dict = Body(...)):
        ack = service.append_event(trial_id, body)
        status = 200 if ack["duplicate"] else 201
        return JSONResponse(status_code=status, content=ack)

    @app.get("/trials/{trial_id}/state")
    def trial_state(trial_id: str):
        return service.state_view(trial_id)

    @app.get("/trials/{trial_id}/recommendation")
    def recommendation(trial_id: str, asOf: Optional[str] = None):
        return service.recommend(trial_id, asOf)

    @app.post("/trials/{trial_id}/what-if")
    def what_if(trial_id: str, body: dict = Body(default={})):
        return service.what_if(trial_id, body)

    if static_dir is not None and Path(static_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
