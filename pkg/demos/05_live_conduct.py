"""Running a live trial through the event-sourced conduct service.

Events append to a JSON-lines log; every answer (state, recommendation,
what-if) is derived by replaying that log, so restarting the service
reproduces identical output.  This demo drives the HTTP app in process;
`awtite serve --state-dir <dir>` hosts the same API on a port.
Run: python3 demos/05_live_conduct.py
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from awtite.conduct import create_app

state_dir = Path(tempfile.mkdtemp(prefix="awtite-demo-"))
client = TestClient(create_app(state_dir))

# create a trial; the resolved design config is frozen into the log
created = client.post("/trials", json={
    "design": {"design": "aw-mle"},
    "created_at": "2026-01-05T00:00:00Z",
    "trial_id": "demo",
}).json()
print(f"created trial {created['trial_id']}")

rec = client.get("/trials/demo/recommendation?asOf=2026-01-05T00:00:00Z").json()
print(f"fresh trial recommendation: dose {rec['recommended_dose']} ({rec['rationale']})")

# enroll two patients at dose 1, two weeks apart; dedupe tokens make
# retries safe (a double submit acknowledges instead of duplicating)
for pid, day in (("P1", "05"), ("P2", "19")):
    ack = client.post("/trials/demo/events", json={
        "kind": "patient-enrolled", "timestamp": f"2026-01-{day}T00:00:00Z",
        "patient_id": pid, "dose": 1, "dedupe_token": f"enroll-{pid}",
    })
    print(f"enrolled {pid}: seq {ack.json()['seq']} (HTTP {ack.status_code})")

retry = client.post("/trials/demo/events", json={
    "kind": "patient-enrolled", "timestamp": "2026-01-19T00:00:00Z",
    "patient_id": "P2", "dose": 1, "dedupe_token": "enroll-P2",
})
print(f"retried P2 enrollment: HTTP {retry.status_code}, {retry.json()}")

# P1 has a DLT four weeks in; the weight table flips that row to w=1
client.post("/trials/demo/events", json={
    "kind": "dlt-observed", "timestamp": "2026-02-02T00:00:00Z",
    "patient_id": "P1",
})
rec = client.get("/trials/demo/recommendation?asOf=2026-02-16T00:00:00Z").json()
print(f"\nafter the DLT, recommended dose {rec['recommended_dose']}; weight table:")
for row in rec["weights"]:
    print(f"  {row['patient_id']} dose {row['dose']} {row['status']:>8} "
          f"followup {row['followup']:.1f}w  event weight {row['event_coefficient']:.4f}")

# what-if: would a second DLT change the call?  The log is untouched.
hyp = client.post("/trials/demo/what-if", json={
    "as_of": "2026-02-16T00:00:00Z",
    "events": [{"kind": "dlt-observed", "timestamp": "2026-02-10T00:00:00Z",
                "patient_id": "P2"}],
}).json()
print(f"\nwhat-if P2 also had a DLT: dose {hyp['recommended_dose']} "
      f"(actual {rec['recommended_dose']})")

log = state_dir / "demo.jsonl"
print(f"\nappend-only log {log.name}, {len(log.read_text().splitlines())} events:")
for line in log.read_text().splitlines():
    event = json.loads(line)
    print(f"  seq {event['seq']}: {event['kind']}")

# replaying the log from disk gives byte-identical answers
fresh = TestClient(create_app(state_dir))
again = fresh.get("/trials/demo/recommendation?asOf=2026-02-16T00:00:00Z").json()
print(f"\nrestart replay match: {again == rec}")
