// Form state <-> request body <-> permalink. Pure functions, no DOM.

export interface FormState {
  text: string;
  language: string;
  maxWords: number;
  k: number;
  weighting: "linear" | "sqrt";
  container: "circle" | "square";
  font: string;
  optimizeFont: boolean;
  rotationStep: number;
  hyphenate: boolean;
  seed: number;
}

export const DEFAULTS: FormState = {
  text: "",
  language: "en",
  maxWords: 60,
  k: 3,
  weighting: "linear",
  container: "circle",
  font: "sans",
  optimizeFont: true,
  rotationStep: 3,
  hyphenate: true,
  seed: 42,
};

export interface LayoutRequest {
  text: string;
  params: {
    max_words: number;
    k: number;
    weighting: string;
    container: string;
    optimize_font: boolean;
    rotation_step: number;
    hyphenate: boolean;
    seed: number;
  };
}

/** The request body the service understands. Language and font are fixed at
 * server startup, so they stay out of the params. */
export function toRequest(state: FormState): LayoutRequest {
  return {
    text: state.text,
    params: {
      max_words: state.maxWords,
      k: state.k,
      weighting: state.weighting,
      container: state.container,
      optimize_font: state.optimizeFont,
      rotation_step: state.rotationStep,
      hyphenate: state.hyphenate,
      seed: state.seed,
    },
  };
}

/** null when submittable, otherwise a message for the inline banner. */
export function validate(state: FormState): string | null {
  if (!state.text.trim()) return "Paste some text first.";
  if (state.text.length > 1 << 20) return "Text is larger than 1 MiB.";
  if (!(state.maxWords >= 1)) return "Word count must be at least 1.";
  if (!(state.k >= 1)) return "k must be at least 1.";
  if (!(state.rotationStep > 0 && state.rotationStep <= 90)) {
    return "Rotation step must be in (0, 90].";
  }
  if (!Number.isFinite(state.seed)) return "Seed must be a number.";
  return null;
}

const NUMERIC: ReadonlyArray<keyof FormState> = ["maxWords", "k", "rotationStep", "seed"];
const BOOLEAN: ReadonlyArray<keyof FormState> = ["optimizeFont", "hyphenate"];

/** Serialize the whole form (including the text) so a reload reproduces the
 * identical request body. */
export function toPermalink(state: FormState): string {
  const query = new URLSearchParams();
  for (const key of Object.keys(DEFAULTS) as Array<keyof FormState>) {
    const value = state[key];
    if (value !== DEFAULTS[key]) query.set(key, String(value));
  }
  return query.toString();
}

export function fromPermalink(query: string): FormState {
  const params = new URLSearchParams(query);
  const state: FormState = { ...DEFAULTS };
  for (const key of Object.keys(DEFAULTS) as Array<keyof FormState>) {
    const raw = params.get(key);
    if (raw === null) continue;
    if (NUMERIC.includes(key)) {
      const parsed = Number(raw);
      if (Number.isFinite(parsed)) (state as any)[key] = parsed;
    } else if (BOOLEAN.includes(key)) {
      (state as any)[key] = raw === "true";
    } else {
      (state as any)[key] = raw;
    }
  }
  return state;
}
