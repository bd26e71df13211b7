// Slot markers of the form {NAME:KIND} inside button template text.
// Validation mirrors the server: the dialog rejects a bad fill before
// anything is sent, the server remains the authority on the final text.

export type SlotKind =
  | "FREE_TEXT"
  | "NUMBER"
  | "DISTANCE"
  | "ANGLE"
  | "ENTITY_ID";

export interface Slot {
  name: string;
  kind: SlotKind;
}

const MARKER = /\{([A-Z][A-Z0-9_]*):([A-Z_]+)\}/g;

const DISTANCE_UNITS = [
  "feet", "foot", "ft", "meters", "meter", "m",
  "centimeters", "cm", "inches", "inch", "in",
];
const ANGLE_UNITS = ["degrees", "degree", "deg", "radians", "rad"];

const NUMBER_RE = /^\d+(?:\.\d+)?$/;
const DISTANCE_RE = new RegExp(
  `^\\d+(?:\\.\\d+)?\\s*(?:${DISTANCE_UNITS.join("|")})$`, "i");
const ANGLE_RE = new RegExp(
  `^\\d+(?:\\.\\d+)?\\s*(?:${ANGLE_UNITS.join("|")})$`, "i");

export function parseSlots(text: string): Slot[] {
  const slots: Slot[] = [];
  for (const m of text.matchAll(MARKER)) {
    slots.push({ name: m[1], kind: m[2] as SlotKind });
  }
  return slots;
}

export function hasSlots(text: string): boolean {
  return parseSlots(text).length > 0;
}

// Returns an error message, or null when the fill is acceptable.
export function validateFill(kind: SlotKind, value: string): string | null {
  const v = value.trim();
  if (!v) return "value required";
  switch (kind) {
    case "NUMBER":
      return NUMBER_RE.test(v) ? null : "expected a non-negative number";
    case "DISTANCE":
      return DISTANCE_RE.test(v)
        ? null
        : "expected a distance (number plus unit, e.g. 10 feet)";
    case "ANGLE":
      return ANGLE_RE.test(v)
        ? null
        : "expected an angle (number plus unit, e.g. 45 degrees)";
    case "FREE_TEXT":
    case "ENTITY_ID":
      return null;
  }
}

// Local preview of the filled template; the authoritative text arrives
// back from the server in the press echo event.
export function fillTemplate(
  text: string,
  bindings: Record<string, string>,
): string {
  return text.replace(MARKER, (marker, name: string) =>
    name in bindings ? bindings[name] : marker,
  );
}
