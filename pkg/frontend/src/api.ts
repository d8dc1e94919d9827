// Thin client over the review HTTP API. Every value the console shows
// originates from these responses; the console adds no sentiment logic.

export interface SentimentVerdict {
  label: "positive" | "neutral" | "negative";
  confidence: number;
  classifier_id: string;
}

export interface Ticket {
  ticket_id: string;
  thread_id: string;
  query: string;
  sentiment: SentimentVerdict;
  created_ts: number;
  status: "pending" | "resolved";
  resolution?: {
    sentiment_override: string | null;
    response: string;
    reviewer: string;
    resolved_ts: number;
  };
}

export interface Resolution {
  sentiment_override?: string;
  response: string;
  reviewer: string;
}

export interface ResolveOutcome {
  ticket: Ticket;
  final_state: Record<string, unknown>;
}

export class ConflictError extends Error {
  constructor() {
    super("ticket already resolved");
  }
}

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ReviewApi {
  constructor(private baseUrl: string, private fetchFn: typeof fetch = fetch) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async listPending(): Promise<Ticket[]> {
    const response = await this.fetchFn(this.url("/api/reviews?status=pending"));
    if (!response.ok) {
      throw new ApiError(response.status, `list failed: ${response.status}`);
    }
    const doc = (await response.json()) as { tickets: Ticket[] };
    return doc.tickets;
  }

  async getTicket(ticketId: string): Promise<Ticket> {
    const response = await this.fetchFn(
      this.url(`/api/reviews/${encodeURIComponent(ticketId)}`),
    );
    if (!response.ok) {
      throw new ApiError(response.status, `ticket fetch failed: ${response.status}`);
    }
    return (await response.json()) as Ticket;
  }

  async resolve(ticketId: string, body: Resolution): Promise<ResolveOutcome> {
    const response = await this.fetchFn(
      this.url(`/api/reviews/${encodeURIComponent(ticketId)}/resolve`),
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      },
    );
    if (response.status === 409) {
      throw new ConflictError();
    }
    if (!response.ok) {
      throw new ApiError(response.status, `resolve failed: ${response.status}`);
    }
    return (await response.json()) as ResolveOutcome;
  }
}
