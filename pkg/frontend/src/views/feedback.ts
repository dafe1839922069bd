// Thumbs-up/down control for one statement. Exactly one event per click:
// both buttons disable while a request is in flight (double-click guard),
// and on failure they re-enable with the old weight still shown (no
// optimistic update).

import { ApiClient, StatementDoc, statementKey } from "../api.js";
import { el } from "../dom.js";
import { renderNumber, weightClass } from "../weights.js";

export interface FeedbackCallbacks {
  onWeight?: (statement: StatementDoc, weight: number) => void;
  onError?: (message: string) => void;
}

export function feedbackControl(
  api: ApiClient,
  statement: StatementDoc,
  callbacks: FeedbackCallbacks = {},
): HTMLElement {
  const badge = el("span", { class: `weight-badge ${weightClass(statement.weight)}` },
    renderNumber(statement.weight));
  const up = el("button", { class: "feedback-up", title: "thumbs up" }, "+1");
  const down = el("button", { class: "feedback-down", title: "thumbs down" }, "-1");

  const send = async (direction: "up" | "down") => {
    up.disabled = true;
    down.disabled = true;
    try {
      const updated = await api.feedback(statementKey(statement), direction);
      statement.weight = updated.weight;
      badge.textContent = renderNumber(updated.weight);
      badge.className = `weight-badge ${weightClass(updated.weight)}`;
      callbacks.onWeight?.(statement, updated.weight);
    } catch (err) {
      callbacks.onError?.(String(err));
    } finally {
      up.disabled = false;
      down.disabled = false;
    }
  };

  up.addEventListener("click", () => void send("up"));
  down.addEventListener("click", () => void send("down"));
  return el("span", { class: "feedback-control" }, badge, up, down);
}
