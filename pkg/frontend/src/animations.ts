// Placeholder animations keyed by media cue. Real video assets can replace
// these by mapping the same cue identifiers to files; the game logic never
// looks inside the cue string.

const CUE_FACES: Record<string, string> = {
  "tomato-happy": "😊🍅",
  "tomato-sad": "😢🍅",
  "tomato-angry": "😠🍅",
  "tomato-surprised": "😲🍅",
};

export function playCue(slot: HTMLElement, cue: string): void {
  const face = CUE_FACES[cue] ?? "✨🍅";
  slot.textContent = face;
  slot.classList.remove("cue-bounce");
  // restart the CSS animation
  void slot.offsetWidth;
  slot.classList.add("cue-bounce");
}
