// Canonical queries that make the constrained/unconstrained gap visible in
// one click. Each preset pairs three terms with the word whose rank is
// worth probing.
export interface Preset {
  label: string;
  a: string;
  b: string;
  c: string;
  probe: string;
}

export const PRESETS: Preset[] = [
  { label: "man : doctor :: woman : ?", a: "man", b: "doctor", c: "woman", probe: "doctor" },
  { label: "woman : doctor :: man : ?", a: "woman", b: "doctor", c: "man", probe: "doctor" },
  { label: "man : computer_programmer :: woman : ?", a: "man", b: "computer_programmer", c: "woman", probe: "homemaker" },
  { label: "man : king :: woman : ?", a: "man", b: "king", c: "woman", probe: "queen" },
  { label: "he : strong :: she : ?", a: "he", b: "strong", c: "she", probe: "strong" },
];
