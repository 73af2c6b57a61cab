/** DOM rendering for the three views: facilitator dashboard, ballot entry,
 * results. All state transitions go through the controllers; nothing here
 * tallies anything. */

import { HttpError } from "./api.js";
import {
  classificationRows,
  displayLabel,
  heat,
  type Method,
  type Phase,
  type SessionView,
  type VoteResultView,
  PHASE_ORDER,
} from "./model.js";
import { BallotController, FacilitatorController, GuardError } from "./state.js";

type Child = Node | string;

export function el(
  tag: string,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElement {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.append(child instanceof Node ? child : document.createTextNode(child));
  }
  return node;
}

export function errorText(err: unknown): string {
  if (err instanceof GuardError) return err.message;
  if (err instanceof HttpError) return `${err.status} ${err.body.error}: ${err.body.detail}`;
  return String(err);
}

function flash(root: HTMLElement, message: string, kind: "error" | "ok"): void {
  const box = root.querySelector(".flash");
  if (box) {
    box.textContent = message;
    box.className = `flash ${kind}`;
  }
}

function phaseBadge(phase: Phase): HTMLElement {
  return el("span", { class: `badge phase-${phase}` }, phase);
}

// -- facilitator dashboard ----------------------------------------------------

export function renderDashboard(
  root: HTMLElement,
  ctl: FacilitatorController,
  hooks: { onResultsReady: () => void },
): void {
  const session = ctl.session;
  if (!session) return;
  root.replaceChildren();

  const head = el(
    "div",
    { class: "row head" },
    el("h2", {}, `Session ${session.id.slice(0, 8)}`),
    phaseBadge(session.phase),
  );
  root.append(head, el("div", { class: "flash" }));

  const counts = el(
    "p",
    { class: "counts" },
    `${session.alternatives.length} alternatives · ` +
      `${session.participants.length - 1} decision makers · ` +
      `ballots submitted: ${session.ballot_count}`,
  );
  root.append(counts);

  if (session.submitted && session.phase === "balloting") {
    root.append(
      el(
        "p",
        { class: "muted" },
        session.submitted.length
          ? `submitted so far: ${session.submitted.join(", ")}`
          : "no ballots yet",
      ),
    );
  }

  // enrollment (setup only)
  const enrollForm = el("div", { class: "panel" }, el("h3", {}, "Enroll a decision maker"));
  const pidInput = el("input", { placeholder: "participant id" }) as HTMLInputElement;
  const nameInput = el("input", { placeholder: "display name" }) as HTMLInputElement;
  const enrollBtn = el("button", {}, "Enroll") as HTMLButtonElement;
  enrollBtn.disabled = !ctl.canEnroll();
  const tokenOut = el("div", { class: "tokens" });
  enrollBtn.onclick = async () => {
    try {
      const token = await ctl.enroll(pidInput.value.trim(), nameInput.value.trim());
      tokenOut.append(
        el("p", { class: "token-line" }, `${pidInput.value.trim()} → token: ${token}`),
      );
      pidInput.value = "";
      nameInput.value = "";
      renderDashboard(root, ctl, hooks);
      root.querySelector(".tokens")?.replaceWith(tokenOut);
    } catch (err) {
      flash(root, errorText(err), "error");
    }
  };
  enrollForm.append(el("div", { class: "row" }, pidInput, nameInput, enrollBtn), tokenOut);
  root.append(enrollForm);

  // participants
  const list = el("ul", { class: "participants" });
  for (const p of session.participants) {
    list.append(el("li", {}, `${p.display_name} (${p.id}) · ${p.role}`));
  }
  root.append(el("div", { class: "panel" }, el("h3", {}, "Participants"), list));

  // phase controls: every step rendered, guards mirrored as disabled state
  const controls = el("div", { class: "panel" }, el("h3", {}, "Phase"));
  const row = el("div", { class: "row" });
  for (const target of PHASE_ORDER.slice(1)) {
    const btn = el("button", { class: "phase-btn" }, `advance to ${target}`) as HTMLButtonElement;
    btn.disabled = !ctl.canAdvance(target);
    btn.onclick = async () => {
      try {
        await ctl.advance(target);
        renderDashboard(root, ctl, hooks);
        if (target === "results") hooks.onResultsReady();
      } catch (err) {
        flash(root, errorText(err), "error");
      }
    };
    row.append(btn);
  }
  controls.append(
    row,
    el(
      "p",
      { class: "muted" },
      "closing balloting freezes both results; it needs at least one ballot",
    ),
  );
  root.append(controls);

  if (session.phase === "results" || session.phase === "closed") {
    const btn = el("button", { class: "primary" }, "View results") as HTMLButtonElement;
    btn.onclick = hooks.onResultsReady;
    root.append(btn);
  }
}

// -- ballot entry ----------------------------------------------------------------

export function renderBallotEntry(
  root: HTMLElement,
  ctl: BallotController,
  hooks: { onSubmitted: (count: number) => void },
): void {
  const session = ctl.session;
  root.replaceChildren();
  root.append(
    el(
      "div",
      { class: "row head" },
      el("h2", {}, "Your ballot"),
      phaseBadge(session.phase),
    ),
    el("div", { class: "flash" }),
    el(
      "p",
      { class: "muted" },
      "drag the areas into your order of preference, best first; " +
        "you can resubmit until balloting closes",
    ),
  );

  const byId = new Map(session.alternatives.map((a) => [a.id, a]));
  const list = el("ul", { class: "rank-list" });
  let dragFrom = -1;
  ctl.order.forEach((id, index) => {
    const alt = byId.get(id);
    const item = el(
      "li",
      { draggable: "true", "data-index": String(index) },
      el("span", { class: "rank-no" }, String(index + 1)),
      el("span", {}, alt ? `${displayLabel(alt)} (${id})` : id),
    );
    item.addEventListener("dragstart", () => {
      dragFrom = index;
    });
    item.addEventListener("dragover", (ev) => ev.preventDefault());
    item.addEventListener("drop", (ev) => {
      ev.preventDefault();
      if (dragFrom >= 0) {
        ctl.move(dragFrom, index);
        renderBallotEntry(root, ctl, hooks);
      }
    });
    list.append(item);
  });
  root.append(list);

  // suggestion panel: personal weight sliders, normalized to sum 1
  if (ctl.canSuggest() && session.criteria) {
    const panel = el("div", { class: "panel" }, el("h3", {}, "Suggest from my weights"));
    const sliders = new Map<string, HTMLInputElement>();
    for (const criterion of session.criteria) {
      const slider = el("input", {
        type: "range",
        min: "0",
        max: "100",
        value: String(Math.round(criterion.weight * 100)),
      }) as HTMLInputElement;
      sliders.set(criterion.id, slider);
      const valueOut = el("span", { class: "weight-out" }, "");
      slider.addEventListener("input", () => {
        valueOut.textContent = normalizedPercent(sliders, criterion.id);
      });
      valueOut.textContent = normalizedPercent(sliders, criterion.id);
      panel.append(
        el(
          "div",
          { class: "slider-row" },
          el("label", {}, `${criterion.name} (${criterion.id})`),
          slider,
          valueOut,
        ),
      );
    }
    const suggestBtn = el("button", {}, "Suggest ranking") as HTMLButtonElement;
    suggestBtn.onclick = async () => {
      try {
        const raw: Record<string, number> = {};
        for (const [cid, slider] of sliders) raw[cid] = Number(slider.value);
        await ctl.suggestFromWeights(raw);
        renderBallotEntry(root, ctl, hooks);
      } catch (err) {
        flash(root, errorText(err), "error");
      }
    };
    panel.append(
      suggestBtn,
      el("p", { class: "muted" }, "weights are normalized to sum to 1 before scoring"),
    );
    root.append(panel);
  }

  const problem = el("p", { class: "inline-error" });
  const submitBtn = el("button", { class: "primary" }, "Submit ballot") as HTMLButtonElement;
  submitBtn.onclick = async () => {
    try {
      const count = await ctl.submit();
      flash(root, `ballot accepted (${count} total)`, "ok");
      hooks.onSubmitted(count);
    } catch (err) {
      if (err instanceof GuardError) problem.textContent = err.message;
      else flash(root, errorText(err), "error");
    }
  };
  root.append(submitBtn, problem);
}

function normalizedPercent(sliders: Map<string, HTMLInputElement>, cid: string): string {
  let total = 0;
  for (const s of sliders.values()) total += Number(s.value);
  const own = Number(sliders.get(cid)!.value);
  return total > 0 ? `${((own / total) * 100).toFixed(0)}%` : "0%";
}

// -- results view -------------------------------------------------------------------

export function renderResults(
  root: HTMLElement,
  session: SessionView,
  results: Record<Method, VoteResultView>,
): void {
  root.replaceChildren();
  root.append(
    el(
      "div",
      { class: "row head" },
      el("h2", {}, "Results"),
      phaseBadge(session.phase),
    ),
  );

  const grid = el("div", { class: "results-grid" });
  grid.append(renderBordaPanel(session, results.borda));
  grid.append(renderCondorcetPanel(session, results.condorcet));
  root.append(grid);
}

export function renderWaiting(root: HTMLElement, session: SessionView): void {
  const detail =
    session.phase === "setup"
      ? "the facilitator is still setting up this session"
      : `waiting for the facilitator to close balloting (ballots: ${session.ballot_count})`;
  root.replaceChildren(
    el("h2", {}, "Waiting"),
    el("p", { class: "muted" }, `phase: ${session.phase} · ${detail}`),
  );
}

function classificationTable(session: SessionView, ranking: string[]): HTMLElement {
  const table = el("table", { class: "classification" });
  table.append(
    el(
      "tr",
      {},
      el("th", {}, "Integrated Security Area"),
      el("th", {}, "Final Classification"),
    ),
  );
  for (const row of classificationRows(ranking, session.alternatives)) {
    table.append(el("tr", {}, el("td", {}, row.label), el("td", {}, row.place)));
  }
  return table;
}

function renderBordaPanel(session: SessionView, result: VoteResultView): HTMLElement {
  const panel = el("div", { class: "panel" }, el("h3", {}, "Borda count"));
  panel.append(classificationTable(session, result.ranking));

  const max = Math.max(...Object.values(result.scores));
  const bars = el("div", { class: "bars" });
  for (const id of result.ranking) {
    const score = result.scores[id];
    const width = max > 0 ? (score / max) * 100 : 0;
    bars.append(
      el(
        "div",
        { class: "bar-row" },
        el("span", { class: "bar-label" }, id),
        el(
          "div",
          { class: "bar-track" },
          el("div", { class: "bar-fill", style: `width: ${width.toFixed(1)}%` }),
        ),
        el("span", { class: "bar-score" }, String(score)),
      ),
    );
  }
  panel.append(el("h4", {}, "points"), bars);
  return panel;
}

function renderCondorcetPanel(session: SessionView, result: VoteResultView): HTMLElement {
  const panel = el("div", { class: "panel" }, el("h3", {}, "Condorcet"));
  if (result.has_condorcet_winner && result.condorcet_winner) {
    const byId = new Map(session.alternatives.map((a) => [a.id, a]));
    const alt = byId.get(result.condorcet_winner);
    panel.append(
      el(
        "p",
        { class: "winner-badge" },
        `Condorcet winner: ${alt ? displayLabel(alt) : result.condorcet_winner}`,
      ),
    );
  } else {
    panel.append(
      el(
        "p",
        { class: "no-winner" },
        "no Condorcet winner: ranking below is the Copeland completion",
      ),
    );
  }
  panel.append(classificationTable(session, result.ranking));

  if (result.pairwise) {
    panel.append(el("h4", {}, "pairwise preferences (row beats column)"));
    panel.append(renderHeatmap(result.pairwise.alternatives, result.pairwise.wins, result.pairwise.voter_count));
  }
  return panel;
}

function renderHeatmap(ids: string[], wins: number[][], voterCount: number): HTMLElement {
  const table = el("table", { class: "heatmap" });
  const header = el("tr", {}, el("th", {}, ""));
  for (const id of ids) header.append(el("th", {}, shortId(id)));
  table.append(header);
  ids.forEach((rowId, i) => {
    const tr = el("tr", {}, el("th", {}, shortId(rowId)));
    ids.forEach((_colId, j) => {
      const cell = el("td", {}, i === j ? "" : String(wins[i][j]));
      if (i !== j) {
        const intensity = heat(wins[i][j], voterCount);
        cell.setAttribute(
          "style",
          `background: rgba(31, 119, 78, ${(intensity * 0.85).toFixed(3)})`,
        );
        if (2 * wins[i][j] > voterCount) cell.className = "majority";
      } else {
        cell.className = "diag";
      }
      tr.append(cell);
    });
    table.append(tr);
  });
  return table;
}

function shortId(id: string): string {
  const m = /^ISA_(\d+)$/.exec(id);
  return m ? m[1] : id;
}
