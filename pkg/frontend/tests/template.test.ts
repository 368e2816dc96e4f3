import { describe, expect, it } from "vitest";

import { splitTemplate, templateError } from "../src/template.js";

describe("template validation", () => {
  it("rejects a template with no blank", () => {
    expect(templateError("the cat sat")).toMatch(/\*/);
  });

  it("rejects a template with two blanks", () => {
    expect(templateError("the * sat on the *")).toMatch(/exactly one/);
    expect(templateError("the * sat on the *")).toMatch(/found 2/);
  });

  it("rejects many blanks", () => {
    expect(templateError("* * *")).toMatch(/found 3/);
  });

  it("accepts exactly one blank anywhere", () => {
    expect(templateError("the * is kind")).toBeNull();
    expect(templateError("* is kind")).toBeNull();
    expect(templateError("the kind *")).toBeNull();
  });

  it("splits around the blank", () => {
    expect(splitTemplate("the * is kind")).toEqual({
      prefix: "the ",
      suffix: " is kind",
    });
    expect(splitTemplate("* is kind")).toEqual({ prefix: "", suffix: " is kind" });
    expect(splitTemplate("the kind *")).toEqual({ prefix: "the kind ", suffix: "" });
  });

  it("split refuses invalid templates", () => {
    expect(() => splitTemplate("no blank here")).toThrow();
    expect(() => splitTemplate("a * b *")).toThrow();
  });
});
