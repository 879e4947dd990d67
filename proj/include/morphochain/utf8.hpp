#pragma once

#include <cstdint>
#include <locale>
#include <string>
#include <string_view>

#include "morphochain/error.hpp"

// Words are stored as UTF-8 but every length, offset and character operation
// works on Unicode scalar values.
namespace morphochain::utf8 {

inline std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    auto b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    int extra = 0;
    if (b0 < 0x80) {
      cp = b0;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      extra = 1;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      extra = 2;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      extra = 3;
    } else {
      throw ParseError("invalid UTF-8 lead byte");
    }
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) throw ParseError("truncated UTF-8 sequence");
      auto b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) throw ParseError("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (b & 0x3F);
    }
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) throw ParseError("invalid Unicode scalar value");
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

inline void append(std::string& out, char32_t cp) {
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

inline std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) append(out, cp);
  return out;
}

inline std::string encode(char32_t cp) {
  std::string out;
  append(out, cp);
  return out;
}

/// Number of scalar values in a UTF-8 string.
inline std::size_t length(std::string_view s) { return decode(s).size(); }

/// Simple per-character lowercasing via the C.UTF-8 ctype facet; falls back
/// to ASCII folding when that locale is unavailable.
inline std::string lowercase(std::string_view s) {
  static const std::locale loc = [] {
    try {
      return std::locale("C.UTF-8");
    } catch (const std::runtime_error&) {
      return std::locale::classic();
    }
  }();
  const auto& facet = std::use_facet<std::ctype<wchar_t>>(loc);
  std::u32string cps = decode(s);
  for (char32_t& cp : cps) {
    if (cp < 0x80) {
      if (cp >= U'A' && cp <= U'Z') cp += 32;
    } else if constexpr (sizeof(wchar_t) == 4) {
      cp = static_cast<char32_t>(facet.tolower(static_cast<wchar_t>(cp)));
    }
  }
  return encode(cps);
}

}  // namespace morphochain::utf8
