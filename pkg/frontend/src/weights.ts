// Weight presentation. The UI never computes or rounds scores: numbers are
// rendered verbatim from API payloads, and the CSS class is a pure function
// of the weight.

export type WeightClass = "weight-low" | "weight-mid" | "weight-high";

export function weightClass(weight: number): WeightClass {
  if (weight < 1 / 3) return "weight-low";
  if (weight < 2 / 3) return "weight-mid";
  return "weight-high";
}

export function renderNumber(value: number): string {
  return String(value);
}

// Edge thickness proportional to weight, clamped to a drawable range.
export function edgeThickness(weight: number): number {
  return 1 + 5 * Math.max(0, Math.min(1, weight));
}
