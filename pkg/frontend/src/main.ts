// DOM wiring: parameter form on the left, live SVG pane on the right.
// The pane only ever shows SVG produced by the server.

import { LayoutClient, StageError } from "./api.js";
import {
  DEFAULTS,
  FormState,
  fromPermalink,
  toPermalink,
  toRequest,
  validate,
} from "./form.js";

const $ = <T extends HTMLElement>(id: string) =>
  document.getElementById(id) as T;

const client = new LayoutClient();

function readForm(): FormState {
  return {
    text: $<HTMLTextAreaElement>("text").value,
    language: $<HTMLSelectElement>("language").value,
    maxWords: Number($<HTMLInputElement>("maxWords").value),
    k: Number($<HTMLInputElement>("k").value),
    weighting: $<HTMLSelectElement>("weighting").value as FormState["weighting"],
    container: $<HTMLSelectElement>("container").value as FormState["container"],
    font: $<HTMLSelectElement>("font").value,
    optimizeFont: $<HTMLInputElement>("optimizeFont").checked,
    rotationStep: Number($<HTMLInputElement>("rotationStep").value),
    hyphenate: $<HTMLInputElement>("hyphenate").checked,
    seed: Number($<HTMLInputElement>("seed").value),
  };
}

function writeForm(state: FormState): void {
  $<HTMLTextAreaElement>("text").value = state.text;
  $<HTMLSelectElement>("language").value = state.language;
  $<HTMLInputElement>("maxWords").value = String(state.maxWords);
  $<HTMLInputElement>("k").value = String(state.k);
  $<HTMLSelectElement>("weighting").value = state.weighting;
  $<HTMLSelectElement>("container").value = state.container;
  $<HTMLSelectElement>("font").value = state.font;
  $<HTMLInputElement>("optimizeFont").checked = state.optimizeFont;
  $<HTMLInputElement>("rotationStep").value = String(state.rotationStep);
  $<HTMLInputElement>("hyphenate").checked = state.hyphenate;
  $<HTMLInputElement>("seed").value = String(state.seed);
}

function showBanner(message: string | null): void {
  const banner = $("banner");
  banner.textContent = message ?? "";
  banner.classList.toggle("hidden", message === null);
}

function showStats(timings: Record<string, number>): void {
  const entries = Object.entries(timings);
  const footer = $("stats");
  if (!entries.length) {
    footer.textContent = "";
    return;
  }
  const total = entries.reduce((acc, [, s]) => acc + s, 0);
  const parts = entries.map(([stage, s]) => `${stage} ${(s * 1000).toFixed(0)}ms`);
  footer.textContent = `${parts.join(" · ")} · total ${(total * 1000).toFixed(0)}ms`;
}

function setLoading(loading: boolean): void {
  $<HTMLButtonElement>("submit").disabled = loading;
  $("result").classList.toggle("loading", loading);
}

async function submit(): Promise<void> {
  const state = readForm();
  const problem = validate(state);
  if (problem !== null) {
    showBanner(problem);
    return;
  }
  showBanner(null);
  setLoading(true);
  try {
    const { svg, timings } = await client.render(toRequest(state));
    $("result").innerHTML = svg;
    showStats(timings);
    history.replaceState(null, "", `?${toPermalink(state)}`);
  } catch (err) {
    if ((err as Error).name === "AbortError") return;
    if (err instanceof StageError) {
      showBanner(`Failed in ${err.stage}: ${err.message}`);
    } else {
      showBanner(`Network error: ${(err as Error).message}`);
    }
  } finally {
    setLoading(false);
  }
}

function downloadSvg(): void {
  const svg = $("result").querySelector("svg");
  if (!svg) {
    showBanner("Nothing to download yet.");
    return;
  }
  const blob = new Blob([svg.outerHTML], { type: "image/svg+xml" });
  const url = URL.createObjectURL(blob);
  const link = document.createElement("a");
  link.href = url;
  link.download = "storygem.svg";
  link.click();
  URL.revokeObjectURL(url);
}

async function copyPermalink(): Promise<void> {
  const url = `${location.origin}${location.pathname}?${toPermalink(readForm())}`;
  history.replaceState(null, "", url);
  try {
    await navigator.clipboard.writeText(url);
    showBanner(null);
  } catch {
    showBanner("Permalink updated in the address bar.");
  }
}

export function init(): void {
  const form = $("form");
  if (form.dataset.wired === "true") return;
  form.dataset.wired = "true";
  writeForm({ ...DEFAULTS, ...fromPermalink(location.search) });
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void submit();
  });
  $("download").addEventListener("click", downloadSvg);
  $("permalink").addEventListener("click", () => void copyPermalink());
}



if (typeof document !== "undefined" && document.getElementById("form")) {
  init();
}
