#include "ltq/utf8.hpp"

#include "ltq/error.hpp"

namespace ltq::utf8 {

namespace {

struct Range {
    char32_t lo;
    char32_t hi;
};

template <std::size_t N>
bool in_ranges(const Range (&ranges)[N], char32_t cp) noexcept {
    for (const auto& r : ranges) {
        if (cp < r.lo) return false;
        if (cp <= r.hi) return true;
    }
    return false;
}

// Sorted, non-overlapping.
constexpr Range kCjk[] = {
    {0x2E80, 0x2FDF},   {0x3005, 0x3007},   {0x3021, 0x3029},   {0x3040, 0x30FF},
    {0x3100, 0x312F},   {0x31A0, 0x31BF},   {0x31F0, 0x31FF},   {0x3400, 0x4DBF},
    {0x4E00, 0x9FFF},   {0xAC00, 0xD7AF},   {0xF900, 0xFAFF},   {0x20000, 0x2FA1F},
    {0x30000, 0x3134F},
};

constexpr Range kWord[] = {
    {'0', '9'},         {'A', 'Z'},         {'a', 'z'},         {0x00AA, 0x00AA},
    {0x00B5, 0x00B5},   {0x00BA, 0x00BA},   {0x00C0, 0x00D6},   {0x00D8, 0x00F6},
    {0x00F8, 0x02AF},   {0x0300, 0x036F},   {0x0370, 0x0374},   {0x0376, 0x037D},
    {0x037F, 0x0383},   {0x0386, 0x0386},   {0x0388, 0x03FF},   {0x0400, 0x0481},
    {0x0483, 0x052F},   {0x0531, 0x0556},   {0x0561, 0x0587},   {0x0591, 0x05BD},
    {0x05D0, 0x05EA},   {0x0610, 0x061A},   {0x0620, 0x0669},   {0x066E, 0x06D3},
    {0x0900, 0x0963},   {0x0966, 0x096F},   {0x0E01, 0x0E3A},   {0x0E40, 0x0E4E},
    {0x0E50, 0x0E59},   {0x1E00, 0x1FFF},   {0xFF10, 0xFF19},   {0xFF21, 0xFF3A},
    {0xFF41, 0xFF5A},
};

} // namespace

std::u32string decode(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const auto b0 = static_cast<unsigned char>(bytes[i]);
        std::size_t len = 0;
        char32_t cp = 0;
        if (b0 < 0x80) {
            len = 1;
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            throw Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        if (i + len > bytes.size())
            throw Error("truncated UTF-8 sequence at offset " + std::to_string(i));
        for (std::size_t k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(bytes[i + k]);
            if ((b & 0xC0) != 0x80)
                throw Error("invalid UTF-8 continuation at offset " + std::to_string(i + k));
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw Error("invalid UTF-8 code point at offset " + std::to_string(i));
        out.push_back(cp);
        i += len;
    }
    return out;
}

void append(std::string& out, char32_t cp) {
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

std::string encode(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) append(out, cp);
    return out;
}

bool is_space(char32_t cp) noexcept {
    switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_cjk(char32_t cp) noexcept { return in_ranges(kCjk, cp); }

bool is_word_char(char32_t cp) noexcept { return in_ranges(kWord, cp); }

char32_t fold_case(char32_t cp) noexcept {
    if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 0x20 : cp;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
    if (cp >= 0x100 && cp <= 0x17F) {
        if (cp == 0x130 || cp == 0x131 || cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
        if (cp == 0x178) return 0xFF;
        const bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
        if (odd_upper) return (cp % 2 == 1) ? cp + 1 : cp;
        return (cp % 2 == 0) ? cp + 1 : cp;
    }
    if (cp >= 0x391 && cp <= 0x3AB && cp != 0x3A2) return cp + 0x20;
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
    if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
    return cp;
}

std::string fold_case(std::string_view bytes) {
    std::string out;
    out.reserve(bytes.size());
    for (char32_t cp : decode(bytes)) append(out, fold_case(cp));
    return out;
}

} // namespace ltq::utf8
