/**
 * Blank-template validation shared by the sentence tab and its tests.
 * A template is a sentence with exactly one '*' marking the blank.
 */

export function templateError(template: string): string | null {
  let stars = 0;
  for (const ch of template) {
    if (ch === "*") stars++;
  }
  if (stars === 0) return "mark the blank with a single '*'";
  if (stars > 1) return `the template must contain exactly one '*' (found ${stars})`;
  return null;
}

export function splitTemplate(template: string): { prefix: string; suffix: string } {
  const err = templateError(template);
  if (err) throw new Error(err);
  const at = template.indexOf("*");
  return { prefix: template.slice(0, at), suffix: template.slice(at + 1) };
}
