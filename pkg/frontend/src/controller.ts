// Console state machine: polls the pending list, tracks the selected
// ticket, validates and submits resolutions. DOM-free; a host supplies
// timers and a render sink so the whole thing is testable with mocks.

import {
  ConflictError,
  ReviewApi,
  type Resolution,
  type ResolveOutcome,
  type Ticket,
} from "./api.js";
import {
  renderBanner,
  renderDetail,
  renderError,
  renderFinalState,
  renderPendingList,
} from "./render.js";

export interface ConsoleView {
  listHtml: string;
  detailHtml: string;
  bannerHtml: string;
}

export interface ControllerOptions {
  pollIntervalMs?: number;
  now?: () => number;
  setInterval?: typeof setInterval;
  clearInterval?: typeof clearInterval;
}

export class ConsoleController {
  private tickets: Ticket[] = [];
  private selected: Ticket | null = null;
  private detailHtml = "";
  private bannerHtml = "";
  private submitting = false;
  private timer: ReturnType<typeof setInterval> | null = null;
  readonly pollIntervalMs: number;
  private readonly now: () => number;
  private readonly setIntervalFn: typeof setInterval;
  private readonly clearIntervalFn: typeof clearInterval;

  constructor(
    private api: ReviewApi,
    private render: (view: ConsoleView) => void,
    options: ControllerOptions = {},
  ) {
    this.pollIntervalMs = options.pollIntervalMs ?? 2000;
    this.now = options.now ?? Date.now;
    this.setIntervalFn = options.setInterval ?? setInterval;
    this.clearIntervalFn = options.clearInterval ?? clearInterval;
  }

  start(): void {
    void this.refresh();
    this.timer = this.setIntervalFn(() => void this.refresh(), this.pollIntervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      this.clearIntervalFn(this.timer);
      this.timer = null;
    }
  }

  private paint(): void {
    this.render({
      listHtml: renderPendingList(this.tickets, this.now()),
      detailHtml: this.detailHtml,
      bannerHtml: this.bannerHtml,
    });
  }

  async refresh(): Promise<void> {
    try {
      this.tickets = await this.api.listPending();
      this.bannerHtml = "";
      // A ticket resolved elsewhere disappears from the list; drop any
      // stale selection so the form cannot post to it.
      if (
        this.selected !== null &&
        !this.tickets.some((t) => t.ticket_id === this.selected!.ticket_id)
      ) {
        this.selected = null;
        this.detailHtml = "";
      }
    } catch {
      // Non-fatal: keep the last list and show a connection banner; the
      // next poll retries.
      this.bannerHtml = renderBanner("API unreachable, retrying…");
    }
    this.paint();
  }

  async select(ticketId: string): Promise<void> {
    const ticket = this.tickets.find((t) => t.ticket_id === ticketId) ?? null;
    this.selected = ticket;
    this.detailHtml = ticket === null ? "" : renderDetail(ticket);
    this.paint();
  }

  /** Client-side gate; returns the problem or null when submittable. */
  validate(fields: Resolution): string | null {
    if (!fields.response.trim()) {
      return "response must not be empty";
    }
    if (!fields.reviewer.trim()) {
      return "reviewer must not be empty";
    }
    return null;
  }

  async submit(fields: Resolution): Promise<ResolveOutcome | null> {
    if (this.selected === null || this.submitting) {
      return null;
    }
    const problem = this.validate(fields);
    if (problem !== null) {
      this.detailHtml = renderDetail(this.selected) + renderError(problem);
      this.paint();
      return null;
    }
    this.submitting = true; // double-submit block until this attempt settles
    try {
      const body: Resolution = {
        response: fields.response,
        reviewer: fields.reviewer,
      };
      if (fields.sentiment_override) {
        body.sentiment_override = fields.sentiment_override;
      }
      const outcome = await this.api.resolve(this.selected.ticket_id, body);
      this.detailHtml = renderFinalState(outcome.final_state);
      this.selected = null;
      await this.refresh();
      return outcome;
    } catch (error) {
      if (error instanceof ConflictError) {
        this.detailHtml = renderError(
          "Ticket was already resolved by another reviewer.",
        );
        this.selected = null;
        await this.refresh();
      } else {
        this.detailHtml =
          renderDetail(this.selected!) + renderError(`resolve failed: ${error}`);
        this.paint();
      }
      return null;
    } finally {
      this.submitting = false;
    }
  }
}
