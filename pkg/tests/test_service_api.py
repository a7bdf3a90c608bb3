import threading

from writeboard.core.model import Condition
from writeboard.gateway.schemas import TaskKind
from writeboard.service.events import parse_log, replay

import helpers

GOALS_BODY = {
    "expected_time_min": 30,
    "logical_coherence": 80,
    "expression_accuracy": 70,
    "structure_completeness": 60,
    "content_understanding": 90,
}


def run_full_flow(client, condition="Explainable") -> str:
    """Create -> goals -> write -> chat -> evaluate everything -> reflect."""
    sid = client.post("/sessions", json={"condition": condition}).json()["session_id"]
    assert client.put(f"/sessions/{sid}/goals", json=GOALS_BODY).status_code == 200
    assert client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"}).status_code == 200
    draft = " ".join(f"w{i}" for i in range(260))
    assert client.put(f"/sessions/{sid}/draft", json={"text": draft}).status_code == 200
    assert client.post(f"/sessions/{sid}/chat", json={"message": "how should I open?"}).status_code == 200
    assert client.post(f"/sessions/{sid}/evaluate/progress").status_code == 200
    assert client.post(f"/sessions/{sid}/evaluate/dialogue").status_code == 200
    assert client.post(f"/sessions/{sid}/evaluate/rubric").status_code == 200
    assert client.post(f"/sessions/{sid}/advance-phase", json={"target": "Reflection"}).status_code == 200
    assert client.post(f"/sessions/{sid}/evaluate/reflection").status_code == 200
    return sid


class TestSessionLifecycle:
    def test_create_returns_forethought_session(self, make_client):
        client, _, _ = make_client()
        body = client.post("/sessions", json={"condition": "Explainable"}).json()
        assert body["phase"] == "Forethought"
        assert body["condition"] == "Explainable"
        assert len(body["session_id"]) >= 16

    def test_two_creates_are_distinct(self, make_client):
        client, _, _ = make_client()
        first = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        second = client.post("/sessions", json={"condition": "VisualOnly"}).json()["session_id"]
        assert first != second

    def test_unknown_session_is_404_with_code(self, make_client):
        client, _, _ = make_client()
        response = client.get("/sessions/does-not-exist/dashboard")
        assert response.status_code == 404
        assert response.json()["error"] == "UnknownSession"

    def test_phase_skip_is_409_with_code(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        response = client.post(f"/sessions/{sid}/advance-phase", json={"target": "Reflection"})
        assert response.status_code == 409
        assert response.json()["error"] == "PhaseOrderViolation"

    def test_performance_without_goals_is_409_missing_goals(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        response = client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"})
        assert response.json()["error"] == "MissingGoals"

    def test_goals_lock_after_planning(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        client.put(f"/sessions/{sid}/goals", json=GOALS_BODY)
        client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"})
        response = client.put(f"/sessions/{sid}/goals", json=GOALS_BODY)
        assert response.status_code == 409
        assert response.json()["error"] == "GoalsLocked"

    def test_draft_outside_performance_is_rejected(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        response = client.put(f"/sessions/{sid}/draft", json={"text": "early"})
        assert response.status_code == 409
        assert response.json()["error"] == "WrongPhase"


class TestChat:
    def test_chat_appends_both_turns(self, make_client):
        client, service, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        reply = client.post(f"/sessions/{sid}/chat", json={"message": "hello"}).json()["reply"]
        assert reply  # scripted assistant text
        log = service.get_session(sid).chat_log
        assert [t.role.value for t in log] == ["student", "assistant"]
        assert log[0].text == "hello"


class TestDashboard:
    def test_forethought_dashboard_is_empty_but_editable(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        view = client.get(f"/sessions/{sid}/dashboard").json()
        assert view["phase"] == "Forethought"
        assert "goals" not in view
        assert "progress" not in view
        assert all("target" not in d for d in view["radar"])
        assert view["goal_references"]  # reference text for the goal editor

    def test_dashboard_after_reflection_has_both_series(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        view = client.get(f"/sessions/{sid}/dashboard").json()
        for dim in view["radar"]:
            assert dim["target"] is not None
            assert dim["actual"] is not None
            assert dim["delta"] == dim["actual"] - dim["target"]
        assert view["overlay"] == {
            "logical_coherence": -10,
            "expression_accuracy": -5,
            "structure_completeness": 20,
            "content_understanding": -15,
        }
        assert view["time"]["expected_min"] == 30
        assert view["progress"]["bars"][0] == {"key": "Background", "label": "Research Background", "percent": 90}
        assert view["dialogue"]["window"] == [1]
        assert set(view["explanations_available"]) >= {
            "progress.Method", "reflection.logical_coherence", "dialogue.TaskFocus", "rubric.Length",
        }

    def test_visual_only_dashboard_has_no_affordances(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client, condition="VisualOnly")
        view = client.get(f"/sessions/{sid}/dashboard").json()
        assert view["explainable"] is False
        assert "explanations_available" not in view
        # the charts themselves are still shown to the control condition
        assert view["progress"]["bars"]
        assert view["dialogue"]["bars"]


class TestExplanations:
    def test_drill_down_after_evaluation(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        body = client.get(f"/sessions/{sid}/explanation/progress.Method").json()
        assert body["metric"] == "progress.Method"
        assert len(body["reasoning_chain"]) >= 1
        assert len(body["suggestions"]) >= 1

    def test_unevaluated_metric_is_404(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        response = client.get(f"/sessions/{sid}/explanation/progress.Method")
        assert response.status_code == 404
        assert response.json()["error"] == "MetricNotEvaluated"

    def test_visual_only_explanation_is_403(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client, condition="VisualOnly")
        response = client.get(f"/sessions/{sid}/explanation/progress.Method")
        assert response.status_code == 403
        assert response.json()["error"] == "ExplainabilityDisabled"

    def test_malformed_metric_is_422(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        response = client.get(f"/sessions/{sid}/explanation/nonsense")
        assert response.status_code == 422


class TestFollowUps:
    def test_follow_up_thread_persists(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        explanation = client.get(f"/sessions/{sid}/explanation/progress.Method").json()
        span = explanation["reasoning_chain"][0][:25]
        response = client.post(
            f"/sessions/{sid}/follow-up",
            json={"metric": "progress.Method", "selected_text": span, "question": "why?"},
        )
        assert response.status_code == 200
        assert response.json()["answer"]
        again = client.get(f"/sessions/{sid}/explanation/progress.Method").json()
        assert len(again["follow_ups"]) == 1
        assert again["follow_ups"][0]["selected_text"] == span

    def test_selection_not_in_explanation_is_409(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        response = client.post(
            f"/sessions/{sid}/follow-up",
            json={"metric": "progress.Method", "selected_text": "never said this", "question": "why?"},
        )
        assert response.status_code == 409
        assert response.json()["error"] == "SelectionNotInExplanation"

    def test_visual_only_follow_up_is_403_and_never_calls_judge(self, make_client):
        client, _, transport = make_client()
        sid = run_full_flow(client, condition="VisualOnly")
        response = client.post(
            f"/sessions/{sid}/follow-up",
            json={"metric": "progress.Method", "selected_text": "x", "question": "why?"},
        )
        assert response.status_code == 403
        assert response.json()["error"] == "ExplainabilityDisabled"
        assert transport.calls_of_kind(TaskKind.FOLLOW_UP) == []


class TestEvaluationEndpoints:
    def test_dialogue_without_prompts_is_409(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        client.put(f"/sessions/{sid}/goals", json=GOALS_BODY)
        client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"})
        response = client.post(f"/sessions/{sid}/evaluate/dialogue")
        assert response.status_code == 409
        assert response.json()["error"] == "NoPromptsYet"

    def test_rubric_requires_draft(self, make_client):
        client, _, _ = make_client()
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        client.put(f"/sessions/{sid}/goals", json=GOALS_BODY)
        client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"})
        response = client.post(f"/sessions/{sid}/evaluate/rubric")
        assert response.status_code == 409
        assert response.json()["error"] == "EmptyDraft"

    def test_rubric_total_reflects_local_length(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)  # 260-word draft: Length = 3
        response = client.post(f"/sessions/{sid}/evaluate/rubric").json()
        assert response["levels"]["Length"] == 3
        assert response["total"] == sum(helpers.STANDARD_RUBRIC.values()) + 3

    def test_judge_fault_maps_to_502(self, make_client):
        bad = helpers.progress_content({**helpers.STANDARD_PROGRESS, "Method": 999})
        client, _, _ = make_client([
            helpers.entry(bad, kind="ProgressEval", repeat=True),
            helpers.entry("irrelevant", kind="ChatAssist", repeat=True, reasoning=None),
        ])
        sid = client.post("/sessions", json={"condition": "Explainable"}).json()["session_id"]
        client.put(f"/sessions/{sid}/goals", json=GOALS_BODY)
        client.post(f"/sessions/{sid}/advance-phase", json={"target": "Performance"})
        client.put(f"/sessions/{sid}/draft", json={"text": "words here"})
        response = client.post(f"/sessions/{sid}/evaluate/progress")
        assert response.status_code == 502
        assert response.json()["error"] == "ScoreOutOfRange"


class TestConcurrency:
    def test_interleaved_chats_keep_every_log_gapless(self, make_service):
        service, _ = make_service()
        session_ids = [service.create_session(Condition.EXPLAINABLE) for _ in range(3)]

        def worker(sid: str) -> None:
            for _ in range(5):
                service.chat(sid, "hello there")

        threads = [
            threading.Thread(target=worker, args=(sid,))
            for sid in session_ids
            for _ in range(2)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        for sid in session_ids:
            events = service.store.events(sid)
            assert [e.seq for e in events] == list(range(1, len(events) + 1))
            assert len(events) == 1 + 2 * 10  # Created + (student, assistant) x 10
            replay(sid, events)  # still invariant-clean


class TestExport:
    def test_export_replays_to_the_same_state(self, make_client):
        client, service, _ = make_client()
        sid = run_full_flow(client)
        raw = client.get(f"/sessions/{sid}/export")
        assert raw.status_code == 200
        events = parse_log(raw.content)
        assert replay(sid, events) == service.get_session(sid)

    def test_export_records_every_operation(self, make_client):
        client, _, _ = make_client()
        sid = run_full_flow(client)
        kinds = [e.kind.value for e in parse_log(client.get(f"/sessions/{sid}/export").content)]
        for expected in (
            "Created", "GoalsSet", "PhaseAdvanced", "DraftSaved", "ChatTurn",
            "ProgressEvaluated", "DialogueEvaluated", "RubricJudged", "ReflectionEvaluated",
        ):
            assert expected in kinds
