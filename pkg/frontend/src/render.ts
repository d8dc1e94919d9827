// Pure HTML renderers over API data; no state, no fetching, no DOM reads.

import type { Ticket } from "./api.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function formatAge(createdTs: number, nowMs: number): string {
  const seconds = Math.max(0, Math.round((nowMs - createdTs) / 1000));
  if (seconds < 60) return `${seconds}s`;
  if (seconds < 3600) return `${Math.floor(seconds / 60)}m`;
  return `${Math.floor(seconds / 3600)}h${Math.floor((seconds % 3600) / 60)}m`;
}

export function excerpt(text: string, limit = 80): string {
  return text.length <= limit ? text : text.slice(0, limit - 1) + "…";
}

export function renderPendingList(tickets: Ticket[], nowMs: number): string {
  if (tickets.length === 0) {
    return `<p class="empty">No pending escalations. All quiet.</p>`;
  }
  const rows = tickets
    .map((t) => {
      const verdict = `${t.sentiment.label} ${(t.sentiment.confidence * 100).toFixed(0)}%`;
      return (
        `<tr class="ticket-row" data-ticket="${escapeHtml(t.ticket_id)}">` +
        `<td class="id">${escapeHtml(t.ticket_id)}</td>` +
        `<td class="age">${formatAge(t.created_ts, nowMs)}</td>` +
        `<td class="query">${escapeHtml(excerpt(t.query))}</td>` +
        `<td class="verdict ${t.sentiment.label}">${escapeHtml(verdict)}</td>` +
        `</tr>`
      );
    })
    .join("");
  return (
    `<table class="tickets"><thead><tr>` +
    `<th>ticket</th><th>age</th><th>query</th><th>machine verdict</th>` +
    `</tr></thead><tbody>${rows}</tbody></table>`
  );
}

export function renderDetail(ticket: Ticket): string {
  const labels = ["", "positive", "neutral", "negative"]
    .map((l) =>
      l === ""
        ? `<option value="">keep machine verdict</option>`
        : `<option value="${l}">${l}</option>`,
    )
    .join("");
  return (
    `<section class="detail" data-ticket="${escapeHtml(ticket.ticket_id)}">` +
    `<h2>${escapeHtml(ticket.ticket_id)}</h2>` +
    `<blockquote class="query">${escapeHtml(ticket.query)}</blockquote>` +
    `<p class="verdict">machine: ${escapeHtml(ticket.sentiment.label)} ` +
    `(confidence ${ticket.sentiment.confidence.toFixed(2)}, ` +
    `${escapeHtml(ticket.sentiment.classifier_id)})</p>` +
    `<form class="resolve">` +
    `<label>sentiment override <select name="sentiment_override">${labels}</select></label>` +
    `<label>response <textarea name="response" rows="3"></textarea></label>` +
    `<label>reviewer <input name="reviewer" type="text"></label>` +
    `<button type="submit">Resolve</button>` +
    `</form>` +
    `</section>`
  );
}

export function renderFinalState(state: Record<string, unknown>): string {
  const rows = Object.entries(state)
    .map(
      ([key, value]) =>
        `<tr><th>${escapeHtml(key)}</th><td>${escapeHtml(String(value ?? ""))}</td></tr>`,
    )
    .join("");
  return (
    `<section class="final-state"><h3>Workflow finished</h3>` +
    `<table>${rows}</table></section>`
  );
}

export function renderError(message: string): string {
  return `<p class="error">${escapeHtml(message)}</p>`;
}

export function renderBanner(message: string): string {
  return `<div class="banner">${escapeHtml(message)}</div>`;
}
