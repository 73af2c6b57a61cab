/** Controllers between the API client and the views. Every mutating action
 * re-checks the server's guard locally first and throws GuardError without
 * touching the network when it would be rejected anyway. */

import { ApiClient } from "./api.js";
import {
  ballotProblems,
  canAdvance,
  isPermutation,
  moveItem,
  normalizeWeights,
  type Phase,
  type SessionView,
} from "./model.js";

export class GuardError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "GuardError";
  }
}

export class FacilitatorController {
  session: SessionView | null = null;

  constructor(
    public readonly api: ApiClient,
    public readonly sessionId: string,
  ) {}

  async refresh(): Promise<SessionView> {
    this.session = await this.api.getSession(this.sessionId);
    return this.session;
  }

  private get current(): SessionView {
    if (!this.session) throw new GuardError("session not loaded yet");
    return this.session;
  }

  canAdvance(to: Phase): boolean {
    return this.session !== null && canAdvance(this.session, to);
  }

  async advance(to: Phase): Promise<SessionView> {
    if (!this.canAdvance(to)) {
      throw new GuardError(`cannot advance from ${this.current.phase} to ${to}`);
    }
    this.session = await this.api.advancePhase(this.sessionId, to);
    return this.session;
  }

  canEnroll(): boolean {
    return this.session?.phase === "setup";
  }

  async enroll(id: string, displayName: string): Promise<string> {
    if (!this.canEnroll()) {
      throw new GuardError("participants can only be enrolled during setup");
    }
    if (this.current.participants.some((p) => p.id === id)) {
      throw new GuardError(`participant ${id} is already enrolled`);
    }
    const resp = await this.api.enroll(this.sessionId, {
      id,
      display_name: displayName || id,
    });
    await this.refresh();
    return resp.token;
  }
}

export class BallotController {
  /** Current drag order, best first. */
  order: string[] = [];

  constructor(
    public readonly api: ApiClient,
    public readonly session: SessionView,
    public readonly participantId: string,
  ) {
    this.order = session.your_ballot?.slice() ?? session.alternatives.map((a) => a.id);
  }

  move(from: number, to: number): void {
    this.order = moveItem(this.order, from, to);
  }

  isComplete(): boolean {
    return isPermutation(
      this.order,
      this.session.alternatives.map((a) => a.id),
    );
  }

  problems(): string[] {
    return ballotProblems(
      this.order,
      this.session.alternatives.map((a) => a.id),
    );
  }

  async submit(): Promise<number> {
    if (this.session.phase !== "balloting") {
      throw new GuardError("ballots are only accepted during balloting");
    }
    if (!this.isComplete()) {
      throw new GuardError(`ballot incomplete: ${this.problems().join("; ")}`);
    }
    const resp = await this.api.submitBallot(this.session.id, this.participantId, this.order);
    return resp.ballot_count;
  }

  canSuggest(): boolean {
    return this.session.criteria !== null && this.session.matrix_values !== null;
  }

  /** Ask the server to rank the matrix under personal weights (normalized
   * to sum 1 before sending) and adopt the result as the working order. */
  async suggestFromWeights(raw: Record<string, number>): Promise<string[]> {
    if (!this.canSuggest()) {
      throw new GuardError("this session has no evaluation matrix to score");
    }
    const weights = normalizeWeights(raw);
    const resp = await this.api.suggest(this.session.id, weights);
    this.order = resp.ranking.slice();
    return this.order;
  }
}
