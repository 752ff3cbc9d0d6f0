// Side-panel renderers: potential terms as cyclic arrow-id chips with
// sign badges, the last reduction log, and degeneracy warnings.

import { FlagsDoc, LogDoc, QpDoc } from "./types";

export function signBadge(coef: string): { cls: string; text: string } {
  if (coef === "1") return { cls: "sign plus", text: "+" };
  if (coef === "-1") return { cls: "sign minus", text: "-" };
  return coef.startsWith("-")
    ? { cls: "sign minus", text: coef }
    : { cls: "sign plus", text: `+${coef}` };
}

function div(cls: string, text = ""): HTMLDivElement {
  const node = document.createElement("div");
  node.className = cls;
  if (text) node.textContent = text;
  return node;
}

function span(cls: string, text: string): HTMLSpanElement {
  const node = document.createElement("span");
  node.className = cls;
  node.textContent = text;
  return node;
}

export function renderPotential(container: HTMLElement, qp: QpDoc): void {
  container.textContent = "";
  if (qp.potential.length === 0) {
    container.appendChild(div("empty", "no potential terms"));
    return;
  }
  for (const term of qp.potential) {
    const row = div("term");
    const badge = signBadge(term.coef);
    row.appendChild(span(badge.cls, badge.text));
    term.cycle.forEach((id, i) => {
      if (i > 0) row.appendChild(span("sep", "→"));
      row.appendChild(span("chip", id));
    });
    row.appendChild(span("sep cyc", "↺"));
    container.appendChild(row);
  }
}

export function renderLog(container: HTMLElement, log: LogDoc | null): void {
  container.textContent = "";
  if (!log) {
    container.appendChild(div("empty", "no mutation yet"));
    return;
  }
  container.dataset.reductions = String(log.reductions.length);
  container.appendChild(div("log-line", `mutated at ${log.vertex}`));
  if (log.composites.length > 0) {
    const line = div("log-line");
    line.appendChild(span("k", "composites: "));
    line.appendChild(
      span("v", log.composites.map((a) => `${a.id}: ${a.tail}→${a.head}`).join(", ")),
    );
    container.appendChild(line);
  }
  if (log.reversed_arrows.length > 0) {
    const line = div("log-line");
    line.appendChild(span("k", "reversed: "));
    line.appendChild(
      span("v", log.reversed_arrows.map(([from, to]) => `${from}⇒${to}`).join(", ")),
    );
    container.appendChild(line);
  }
  const count = div("log-line reductions");
  count.textContent =
    log.reductions.length === 1 ? "1 reduction" : `${log.reductions.length} reductions`;
  container.appendChild(count);
  for (const red of log.reductions) {
    container.appendChild(
      div("log-line detail", `dropped pair (${red.pair[0]}, ${red.pair[1]}), rescale ${red.rescale}`),
    );
  }
}

export function renderFlags(container: HTMLElement, flags: FlagsDoc | null): void {
  container.textContent = "";
  if (!flags) return;
  if (!flags.two_acyclic) {
    container.appendChild(div("warn two-cycle", "warning: result has a 2-cycle"));
  }
  if (flags.empty_cycles.length > 0) {
    const cycles = flags.empty_cycles.map((word) => word.join("·")).join(", ");
    container.appendChild(div("warn empty-cycle", `warning: empty cycles: ${cycles}`));
  }
}
