import { describe, expect, it } from "vitest";
import { a1ToCell, colToLetters } from "../src/a1.js";

describe("a1ToCell", () => {
    it("decodes H1 to row 1, column 8", () => {
        expect(a1ToCell("H1")).toEqual({ row: 1, col: 8 });
    });

    it("decodes the identity corner", () => {
        expect(a1ToCell("A1")).toEqual({ row: 1, col: 1 });
    });

    it("decodes two-letter columns base 26", () => {
        expect(a1ToCell("AA10")).toEqual({ row: 10, col: 27 });
        expect(a1ToCell("ZZ9999")).toEqual({ row: 9999, col: 702 });
    });

    it("accepts lowercase and surrounding spaces", () => {
        expect(a1ToCell(" h1 ")).toEqual({ row: 1, col: 8 });
    });

    it.each(["", "H", "1", "1H", "H 1", "A0"])("rejects %j", (label) => {
        expect(() => a1ToCell(label)).toThrow();
    });

    it("inverts colToLetters", () => {
        for (const col of [1, 8, 26, 27, 52, 702, 703, 2000]) {
            expect(a1ToCell(`${colToLetters(col)}7`)).toEqual({ row: 7, col });
        }
    });
});
