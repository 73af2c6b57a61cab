/** Entry point: landing forms, role routing, and the 2-second polling loop
 * that keeps the view in step with the server. */

import { ApiClient } from "./api.js";
import { parseAlternativesText, type Method, type VoteResultView } from "./model.js";
import { BallotController, FacilitatorController } from "./state.js";
import {
  el,
  errorText,
  renderBallotEntry,
  renderDashboard,
  renderResults,
  renderWaiting,
} from "./ui.js";

const POLL_INTERVAL_MS = 2000;

interface Stored {
  sid: string;
  token: string;
  pid: string;
  role: "facilitator" | "decision_maker";
}

function loadStored(): Stored | null {
  const raw = sessionStorage.getItem("consilium.session");
  return raw ? (JSON.parse(raw) as Stored) : null;
}

function saveStored(s: Stored): void {
  sessionStorage.setItem("consilium.session", JSON.stringify(s));
}

function clearStored(): void {
  sessionStorage.removeItem("consilium.session");
}

function app(): HTMLElement {
  return document.getElementById("app")!;
}

function bar(text: string, onLeave?: () => void): HTMLElement {
  const leave = el("button", { class: "linkish" }, "leave session") as HTMLButtonElement;
  leave.onclick = () => {
    clearStored();
    onLeave?.();
    renderLanding();
  };
  return el("div", { class: "topbar" }, el("span", {}, text), leave);
}

// -- landing ------------------------------------------------------------------------

function renderLanding(): void {
  const root = app();
  root.replaceChildren();
  root.append(el("h1", {}, "consilium"), el("div", { class: "flash" }));

  // create (facilitator)
  const create = el("div", { class: "panel" }, el("h3", {}, "Create a session (facilitator)"));
  const facName = el("input", { placeholder: "your display name", value: "Facilitator" }) as HTMLInputElement;
  const matrixFile = el("input", { type: "file", accept: ".csv" }) as HTMLInputElement;
  const criteriaFile = el("input", { type: "file", accept: ".json" }) as HTMLInputElement;
  const manual = el("textarea", {
    placeholder: "…or enter alternatives manually, one per line",
    rows: "4",
  }) as HTMLTextAreaElement;
  const createBtn = el("button", { class: "primary" }, "Create") as HTMLButtonElement;
  createBtn.onclick = async () => {
    const api = new ApiClient("");
    try {
      const body: Parameters<ApiClient["createSession"]>[0] = {
        facilitator: { id: "facilitator", display_name: facName.value || "Facilitator" },
      };
      if (matrixFile.files?.length && criteriaFile.files?.length) {
        body.matrix_csv = await matrixFile.files[0].text();
        body.criteria = JSON.parse(await criteriaFile.files[0].text());
      } else {
        body.alternatives = parseAlternativesText(manual.value);
      }
      const resp = await api.createSession(body);
      saveStored({
        sid: resp.session.id,
        token: resp.token,
        pid: "facilitator",
        role: "facilitator",
      });
      renderApp();
    } catch (err) {
      const flashBox = root.querySelector(".flash");
      if (flashBox) {
        flashBox.textContent = errorText(err);
        flashBox.className = "flash error";
      }
    }
  };
  create.append(
    el("div", { class: "row" }, facName),
    el("div", { class: "row" }, el("label", {}, "matrix CSV"), matrixFile),
    el("div", { class: "row" }, el("label", {}, "criteria JSON"), criteriaFile),
    manual,
    createBtn,
  );

  // join (decision maker or returning facilitator)
  const join = el("div", { class: "panel" }, el("h3", {}, "Join a session"));
  const sidInput = el("input", { placeholder: "session id" }) as HTMLInputElement;
  const pidInput = el("input", { placeholder: "participant id" }) as HTMLInputElement;
  const tokenInput = el("input", { placeholder: "token" }) as HTMLInputElement;
  const joinBtn = el("button", { class: "primary" }, "Join") as HTMLButtonElement;
  joinBtn.onclick = async () => {
    const api = new ApiClient("");
    api.token = tokenInput.value.trim();
    try {
      const view = await api.getSession(sidInput.value.trim());
      const me = view.participants.find((p) => p.id === pidInput.value.trim());
      saveStored({
        sid: view.id,
        token: tokenInput.value.trim(),
        pid: pidInput.value.trim(),
        role: me?.role === "facilitator" ? "facilitator" : "decision_maker",
      });
      renderApp();
    } catch (err) {
      const flashBox = root.querySelector(".flash");
      if (flashBox) {
        flashBox.textContent = errorText(err);
        flashBox.className = "flash error";
      }
    }
  };
  join.append(el("div", { class: "row" }, sidInput, pidInput, tokenInput), joinBtn);

  root.append(el("div", { class: "landing-grid" }, create, join));
}

// -- running session ------------------------------------------------------------------

let pollTimer: number | undefined;

function stopPolling(): void {
  if (pollTimer !== undefined) {
    clearInterval(pollTimer);
    pollTimer = undefined;
  }
}

async function fetchResults(
  api: ApiClient,
  sid: string,
): Promise<Record<Method, VoteResultView>> {
  const [borda, condorcet] = await Promise.all([
    api.results(sid, "borda"),
    api.results(sid, "condorcet"),
  ]);
  return { borda, condorcet };
}

function renderApp(): void {
  const stored = loadStored();
  if (!stored) {
    renderLanding();
    return;
  }
  stopPolling();
  const api = new ApiClient("");
  api.token = stored.token;
  const root = app();
  root.replaceChildren(
    bar(`${stored.pid} @ ${stored.sid.slice(0, 8)}`, stopPolling),
    el("div", { id: "view" }),
  );
  const view = root.querySelector("#view") as HTMLElement;

  if (stored.role === "facilitator") {
    const ctl = new FacilitatorController(api, stored.sid);
    const showResults = async () => {
      const results = await fetchResults(api, stored.sid);
      renderResults(view, ctl.session!, results);
    };
    const tick = async () => {
      try {
        const prevPhase = ctl.session?.phase;
        const prevStamp = ctl.session?.updated_at;
        const session = await ctl.refresh();
        const changed = session.phase !== prevPhase || session.updated_at !== prevStamp;
        const resultsOpen = session.phase === "results" || session.phase === "closed";
        if (changed && !resultsOpen) renderDashboard(view, ctl, { onResultsReady: showResults });
        if (changed && resultsOpen && !view.querySelector(".results-grid")) {
          await showResults();
        }
      } catch {
        // transient poll failures keep the last view
      }
    };
    void tick();
    pollTimer = setInterval(tick, POLL_INTERVAL_MS) as unknown as number;
    return;
  }

  // decision maker
  let ballotCtl: BallotController | null = null;
  const tick = async () => {
    try {
      const session = await api.getSession(stored.sid);
      if (session.phase === "setup") {
        renderWaiting(view, session);
        ballotCtl = null;
      } else if (session.phase === "balloting") {
        if (!ballotCtl) {
          ballotCtl = new BallotController(api, session, stored.pid);
          renderBallotEntry(view, ballotCtl, { onSubmitted: () => undefined });
        }
        // during balloting the list is never re-rendered by the poll, so a
        // drag in progress is never clobbered
      } else {
        ballotCtl = null;
        if (!view.querySelector(".results-grid")) {
          const results = await fetchResults(api, stored.sid);
          renderResults(view, session, results);
        }
      }
    } catch (err) {
      if (!view.hasChildNodes()) {
        view.replaceChildren(el("p", { class: "flash error" }, errorText(err)));
      }
    }
  };
  void tick();
  pollTimer = setInterval(tick, POLL_INTERVAL_MS) as unknown as number;
}

document.addEventListener("DOMContentLoaded", () => {
  renderApp();
});
