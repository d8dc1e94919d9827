// Browser bootstrap: the only module that touches the document.

import { ReviewApi, type Resolution } from "./api.js";
import { ConsoleController } from "./controller.js";

function bootstrap(): void {
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("api") ?? "http://127.0.0.1:8077";
  const listHost = document.getElementById("list")!;
  const detailHost = document.getElementById("detail")!;
  const bannerHost = document.getElementById("banner")!;

  const controller = new ConsoleController(new ReviewApi(baseUrl), (view) => {
    listHost.innerHTML = view.listHtml;
    detailHost.innerHTML = view.detailHtml;
    bannerHost.innerHTML = view.bannerHtml;
  });

  listHost.addEventListener("click", (event) => {
    const row = (event.target as HTMLElement).closest<HTMLElement>(".ticket-row");
    if (row?.dataset.ticket) {
      void controller.select(row.dataset.ticket);
    }
  });

  detailHost.addEventListener("submit", (event) => {
    event.preventDefault();
    const form = event.target as HTMLFormElement;
    const data = new FormData(form);
    const fields: Resolution = {
      response: String(data.get("response") ?? ""),
      reviewer: String(data.get("reviewer") ?? ""),
    };
    const override = String(data.get("sentiment_override") ?? "");
    if (override) {
      fields.sentiment_override = override;
    }
    void controller.submit(fields);
  });

  controller.start();
}

document.addEventListener("DOMContentLoaded", bootstrap);
