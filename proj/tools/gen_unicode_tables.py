#!/usr/bin/env python3
"""Regenerates src/unicode_data.inc from the Python unicodedata module.

The output holds three sorted tables used by the NFC normalizer (full
canonical decompositions, nonzero combining classes, primary composites)
plus per-script assignment masks for the Indic blocks used by the
transliteration tables. Hangul is excluded; it is handled algorithmically.
"""

import sys
import unicodedata as ud

SHANGUL_BASE = 0xAC00
SHANGUL_COUNT = 11172

INDIC_BLOCKS = {
    "devanagari": 0x0900,
    "bengali": 0x0980,
    "gurmukhi": 0x0A00,
    "tamil": 0x0B80,
    "telugu": 0x0C00,
    "malayalam": 0x0D00,
}


def is_hangul_syllable(cp):
    return SHANGUL_BASE <= cp < SHANGUL_BASE + SHANGUL_COUNT


def canonical_decomposition(cp):
    """Raw (single-level) canonical decomposition, or None."""
    d = ud.decomposition(chr(cp))
    if not d or d.startswith("<"):
        return None
    return [int(x, 16) for x in d.split()]


def full_decomposition(cp, memo):
    if cp in memo:
        return memo[cp]
    d = canonical_decomposition(cp)
    if d is None or is_hangul_syllable(cp):
        memo[cp] = [cp]
        return memo[cp]
    out = []
    for c in d:
        out.extend(full_decomposition(c, memo))
    memo[cp] = out
    return out


def main(out_path):
    memo = {}
    decomps = {}   # cp -> full decomposition (len >= 1, != [cp])
    cccs = {}      # cp -> nonzero ccc
    pairs = {}     # (a, b) -> composite for primary composites

    for cp in range(0x110000):
        ch = chr(cp)
        ccc = ud.combining(ch)
        if ccc:
            cccs[cp] = ccc
        if is_hangul_syllable(cp):
            continue
        full = full_decomposition(cp, memo)
        if full != [cp]:
            decomps[cp] = full
        raw = canonical_decomposition(cp)
        if raw and len(raw) == 2:
            # Primary composite iff NFC recombines the pair to this char.
            if ud.normalize("NFC", chr(raw[0]) + chr(raw[1])) == ch:
                pairs[(raw[0], raw[1])] = cp

    pool = []
    decomp_rows = []
    for cp in sorted(decomps):
        seq = decomps[cp]
        decomp_rows.append((cp, len(pool), len(seq)))
        pool.extend(seq)

    with open(out_path, "w") as f:
        w = f.write
        w("// Generated by tools/gen_unicode_tables.py (Unicode %s). Do not edit.\n\n"
          % ud.unidata_version)
        w("inline constexpr char32_t kDecompPool[] = {\n")
        for i in range(0, len(pool), 12):
            w("  " + ", ".join("0x%04X" % c for c in pool[i:i + 12]) + ",\n")
        w("};\n\n")
        w("struct DecompRow { char32_t cp; uint32_t offset; uint32_t length; };\n")
        w("inline constexpr DecompRow kDecompRows[] = {\n")
        for cp, off, n in decomp_rows:
            w("  {0x%04X, %d, %d},\n" % (cp, off, n))
        w("};\n\n")
        w("struct CccRow { char32_t cp; uint8_t ccc; };\n")
        w("inline constexpr CccRow kCccRows[] = {\n")
        for cp in sorted(cccs):
            w("  {0x%04X, %d},\n" % (cp, cccs[cp]))
        w("};\n\n")
        w("struct CompRow { char32_t first; char32_t second; char32_t composite; };\n")
        w("inline constexpr CompRow kCompRows[] = {\n")
        for (a, b) in sorted(pairs):
            w("  {0x%04X, 0x%04X, 0x%04X},\n" % (a, b, pairs[(a, b)]))
        w("};\n\n")

        w("struct IndicBlockRow { const char* name; char32_t base; uint64_t assigned_lo; uint64_t assigned_hi; };\n")
        w("inline constexpr IndicBlockRow kIndicBlocks[] = {\n")
        for name, base in INDIC_BLOCKS.items():
            lo = hi = 0
            for off in range(0x80):
                if ud.category(chr(base + off)) != "Cn":
                    if off < 64:
                        lo |= 1 << off
                    else:
                        hi |= 1 << (off - 64)
            w('  {"%s", 0x%04X, 0x%016XULL, 0x%016XULL},\n' % (name, base, lo, hi))
        w("};\n")

    sys.stderr.write(
        "wrote %s: %d decompositions (pool %d), %d ccc rows, %d composition pairs\n"
        % (out_path, len(decomp_rows), len(pool), len(cccs), len(pairs)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/unicode_data.inc")
