#include "fss/text.hpp"

#include <cstdint>

namespace fss {
namespace {

// Base-letter folding for U+00C0..U+017F (Latin-1 Supplement letters and
// Latin Extended-A). Empty entry means "drop" (not used), nullptr means
// "no mapping, keep the codepoint".
const char* fold_latin1(uint32_t cp) {
    switch (cp) {
        case 0x00C0: case 0x00C1: case 0x00C2: case 0x00C3: case 0x00C4:
        case 0x00C5: case 0x00E0: case 0x00E1: case 0x00E2: case 0x00E3:
        case 0x00E4: case 0x00E5: return "a";
        case 0x00C6: case 0x00E6: return "ae";
        case 0x00C7: case 0x00E7: return "c";
        case 0x00C8: case 0x00C9: case 0x00CA: case 0x00CB:
        case 0x00E8: case 0x00E9: case 0x00EA: case 0x00EB: return "e";
        case 0x00CC: case 0x00CD: case 0x00CE: case 0x00CF:
        case 0x00EC: case 0x00ED: case 0x00EE: case 0x00EF: return "i";
        case 0x00D0: case 0x00F0: return "d";
        case 0x00D1: case 0x00F1: return "n";
        case 0x00D2: case 0x00D3: case 0x00D4: case 0x00D5: case 0x00D6:
        case 0x00D8: case 0x00F2: case 0x00F3: case 0x00F4: case 0x00F5:
        case 0x00F6: case 0x00F8: return "o";
        case 0x00D9: case 0x00DA: case 0x00DB: case 0x00DC:
        case 0x00F9: case 0x00FA: case 0x00FB: case 0x00FC: return "u";
        case 0x00DD: case 0x00FD: case 0x00FF: return "y";
        case 0x00DE: case 0x00FE: return "th";
        case 0x00DF: return "ss";
        default: return nullptr;
    }
}

// Latin Extended-A is laid out in (upper, lower) pairs per base letter.
const char* fold_latin_ext_a(uint32_t cp) {
    if (cp < 0x0100 || cp > 0x017F) return nullptr;
    switch (cp) {
        case 0x0100: case 0x0101: case 0x0102: case 0x0103:
        case 0x0104: case 0x0105: return "a";
        case 0x0106: case 0x0107: case 0x0108: case 0x0109:
        case 0x010A: case 0x010B: case 0x010C: case 0x010D: return "c";
        case 0x010E: case 0x010F: case 0x0110: case 0x0111: return "d";
        case 0x0112: case 0x0113: case 0x0114: case 0x0115:
        case 0x0116: case 0x0117: case 0x0118: case 0x0119:
        case 0x011A: case 0x011B: return "e";
        case 0x011C: case 0x011D: case 0x011E: case 0x011F:
        case 0x0120: case 0x0121: case 0x0122: case 0x0123: return "g";
        case 0x0124: case 0x0125: case 0x0126: case 0x0127: return "h";
        case 0x0128: case 0x0129: case 0x012A: case 0x012B:
        case 0x012C: case 0x012D: case 0x012E: case 0x012F:
        case 0x0130: case 0x0131: return "i";
        case 0x0132: case 0x0133: return "ij";
        case 0x0134: case 0x0135: return "j";
        case 0x0136: case 0x0137: case 0x0138: return "k";
        case 0x0139: case 0x013A: case 0x013B: case 0x013C:
        case 0x013D: case 0x013E: case 0x013F: case 0x0140:
        case 0x0141: case 0x0142: return "l";
        case 0x0143: case 0x0144: case 0x0145: case 0x0146:
        case 0x0147: case 0x0148: case 0x0149: return "n";
        case 0x014A: case 0x014B: return "ng";
        case 0x014C: case 0x014D: case 0x014E: case 0x014F:
        case 0x0150: case 0x0151: return "o";
        case 0x0152: case 0x0153: return "oe";
        case 0x0154: case 0x0155: case 0x0156: case 0x0157:
        case 0x0158: case 0x0159: return "r";
        case 0x015A: case 0x015B: case 0x015C: case 0x015D:
        case 0x015E: case 0x015F: case 0x0160: case 0x0161: return "s";
        case 0x0162: case 0x0163: case 0x0164: case 0x0165:
        case 0x0166: case 0x0167: return "t";
        case 0x0168: case 0x0169: case 0x016A: case 0x016B:
        case 0x016C: case 0x016D: case 0x016E: case 0x016F:
        case 0x0170: case 0x0171: case 0x0172: case 0x0173: return "u";
        case 0x0174: case 0x0175: return "w";
        case 0x0176: case 0x0177: case 0x0178: return "y";
        case 0x0179: case 0x017A: case 0x017B: case 0x017C:
        case 0x017D: case 0x017E: return "z";
        case 0x017F: return "s";  // long s
        default: return nullptr;
    }
}

// Commonly-seen codepoints outside the two main blocks.
const char* fold_extra(uint32_t cp) {
    switch (cp) {
        case 0x01CD: case 0x01CE: return "a";  // caron
        case 0x01CF: case 0x01D0: return "i";
        case 0x01D1: case 0x01D2: return "o";
        case 0x01D3: case 0x01D4: return "u";
        case 0x01E6: case 0x01E7: return "g";
        case 0x0218: case 0x0219: return "s";  // Romanian comma-below
        case 0x021A: case 0x021B: return "t";
        case 0x1E9E: return "ss";              // capital sharp s
        default: return nullptr;
    }
}

bool is_combining_mark(uint32_t cp) {
    return (cp >= 0x0300 && cp <= 0x036F) || (cp >= 0x1AB0 && cp <= 0x1AFF) ||
           (cp >= 0x20D0 && cp <= 0x20FF);
}

// Decodes one UTF-8 codepoint; malformed bytes are passed through as-is so
// normalization never throws on dirty input.
uint32_t decode_utf8(std::string_view s, size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int extra = 0;
    uint32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) { extra = 1; cp = b0 & 0x1F; }
    else if ((b0 & 0xF0) == 0xE0) { extra = 2; cp = b0 & 0x0F; }
    else if ((b0 & 0xF8) == 0xF0) { extra = 3; cp = b0 & 0x07; }
    else { ++i; return b0; }
    if (i + extra >= s.size()) {
        // truncated sequence
        ++i;
        return b0;
    }
    for (int k = 1; k <= extra; ++k) {
        unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += 1 + extra;
    return cp;
}

void append_utf8(std::string& out, uint32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

}  // namespace

std::string normalize_name(std::string_view utf8) {
    std::string folded;
    folded.reserve(utf8.size());
    size_t i = 0;
    while (i < utf8.size()) {
        size_t before = i;
        uint32_t cp = decode_utf8(utf8, i);
        if (i == before) ++i;  // safety against malformed input
        if (cp < 0x80) {
            char c = static_cast<char>(cp);
            if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
            if (c == '\t' || c == '\n' || c == '\r') c = ' ';
            folded.push_back(c);
            continue;
        }
        if (is_combining_mark(cp)) continue;
        if (cp == 0x00A0) {  // no-break space
            folded.push_back(' ');
            continue;
        }
        const char* mapped = fold_latin1(cp);
        if (!mapped) mapped = fold_latin_ext_a(cp);
        if (!mapped) mapped = fold_extra(cp);
        if (mapped) {
            folded += mapped;
        } else {
            append_utf8(folded, cp);
        }
    }

    // collapse whitespace runs and trim
    std::string out;
    out.reserve(folded.size());
    bool pending_space = false;
    for (char c : folded) {
        if (c == ' ') {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace fss
