/** Browser entry point: wires the selectors to the controller and paints
 * the dashboard on every state change. */

import { ApiClient } from "./api.js";
import { DashboardController } from "./controller.js";
import { legendText } from "./render.js";
import { renderDashboard } from "./render.js";
import type { AnalysisParams } from "./types.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

function currentParams(): AnalysisParams {
  const maxLag = el<HTMLInputElement>("max-lag").value;
  const fill = el<HTMLSelectElement>("fill").value;
  return {
    category: el<HTMLSelectElement>("category").value,
    strategy: el<HTMLSelectElement>("strategy").value as AnalysisParams["strategy"],
    preprocessing: el<HTMLSelectElement>("preprocessing").value as AnalysisParams["preprocessing"],
    from: el<HTMLInputElement>("from").value || undefined,
    to: el<HTMLInputElement>("to").value || undefined,
    maxLag: maxLag ? Number(maxLag) : undefined,
    fill: (fill || undefined) as AnalysisParams["fill"],
  };
}

async function boot(): Promise<void> {
  const controller = new DashboardController(new ApiClient(""), (state) => {
    el("dashboard").innerHTML = renderDashboard(state);
  });
  el("legend").textContent = legendText();

  const categorySelect = el<HTMLSelectElement>("category");
  try {
    const categories = await controller.loadCategories();
    if (categories.length === 0) {
      el("dashboard").innerHTML = `<p class="muted">no categories available</p>`;
      return;
    }
    for (const name of categories) {
      const option = document.createElement("option");
      option.value = name;
      option.textContent = name;
      categorySelect.appendChild(option);
    }
  } catch (err) {
    el("dashboard").innerHTML =
      `<div class="error" role="alert">cannot reach the service: ${String(err)}</div>`;
    return;
  }

  const refresh = () => void controller.refresh(currentParams());
  for (const id of ["category", "strategy", "preprocessing", "from", "to", "max-lag", "fill"]) {
    el(id).addEventListener("change", refresh);
  }
  refresh();
}

void boot();
