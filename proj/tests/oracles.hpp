#pragma once

// Independent reference computations for the property tests. Each one works
// bit by bit or byte by byte and shares no code with the library.

#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "icdoc/rdl/model.hpp"
#include "support.hpp"

namespace oracle {

inline std::uint64_t mask(unsigned msb, unsigned lsb) {
    std::uint64_t m = 0;
    for (unsigned b = 0; b < 64; ++b) {
        if (b >= lsb && b <= msb) m |= std::uint64_t{1} << b;
    }
    return m;
}

inline std::uint64_t pack(std::uint64_t reg, unsigned msb, unsigned lsb, std::uint64_t value) {
    std::uint64_t out = 0;
    for (unsigned b = 0; b < 64; ++b) {
        std::uint64_t bit = (b >= lsb && b <= msb) ? (value >> (b - lsb)) & 1 : (reg >> b) & 1;
        out |= bit << b;
    }
    return out;
}

inline std::uint64_t extract(std::uint64_t reg, unsigned msb, unsigned lsb) {
    std::uint64_t out = 0;
    for (unsigned b = lsb; b <= msb; ++b) out |= ((reg >> b) & 1) << (b - lsb);
    return out;
}

inline std::uint64_t random_bits(unsigned width) {
    std::uint64_t v = testing::uniform(0, UINT64_MAX);
    return width >= 64 ? v : v & ((std::uint64_t{1} << width) - 1);
}

/// Number of field pairs within one register sharing at least one bit.
inline std::size_t overlapping_field_pairs(const icdoc::rdl::Register& reg) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < reg.fields.size(); ++i) {
        for (std::size_t j = i + 1; j < reg.fields.size(); ++j) {
            std::set<unsigned> bits;
            for (unsigned b = reg.fields[i].lsb; b <= reg.fields[i].msb; ++b) bits.insert(b);
            bool shared = false;
            for (unsigned b = reg.fields[j].lsb; b <= reg.fields[j].msb; ++b) shared |= bits.contains(b);
            n += shared;
        }
    }
    return n;
}

/// Number of register pairs whose byte ranges share at least one byte.
inline std::size_t overlapping_register_pairs(const icdoc::rdl::RegisterMap& map) {
    std::size_t n = 0;
    auto bytes = [](const icdoc::rdl::Register& r) {
        std::set<std::uint64_t> s;
        for (std::uint64_t k = 0; k < r.regwidth / 8; ++k) s.insert(r.offset + k);
        return s;
    };
    for (std::size_t i = 0; i < map.registers.size(); ++i) {
        auto a = bytes(map.registers[i]);
        for (std::size_t j = i + 1; j < map.registers.size(); ++j) {
            bool shared = false;
            for (auto b : bytes(map.registers[j])) shared |= a.contains(b);
            n += shared;
        }
    }
    return n;
}

/// A small map with every required property set, so only C2/C4 can fire.
inline icdoc::rdl::RegisterMap random_map(std::size_t max_regs = 4, std::size_t max_fields = 4) {
    using namespace icdoc::rdl;
    static const unsigned widths[] = {8, 16, 32};
    RegisterMap map;
    map.name = "m";
    map.endianness = Endianness::little;
    map.line = 1;
    std::size_t line = 2;
    std::size_t regs = testing::uniform(1, max_regs);
    for (std::size_t r = 0; r < regs; ++r) {
        Register reg;
        reg.name = "R" + std::to_string(r);
        reg.desc = "register";
        reg.regwidth = widths[testing::uniform(0, 2)];
        reg.offset = testing::uniform(0, 12);
        reg.line = line++;
        std::size_t fields = testing::uniform(1, max_fields);
        for (std::size_t f = 0; f < fields; ++f) {
            Field field;
            field.name = "F" + std::to_string(f);
            field.lsb = static_cast<unsigned>(testing::uniform(0, reg.regwidth - 1));
            field.msb = static_cast<unsigned>(testing::uniform(field.lsb, std::min<unsigned>(field.lsb + 5, reg.regwidth - 1)));
            field.sw = Access::rw;
            field.reset = 0;
            field.desc = "field";
            field.line = line++;
            reg.fields.push_back(field);
        }
        map.registers.push_back(reg);
    }
    return map;
}

/// Words per sentence: split on whitespace after cutting the text at '.',
/// '!' or '?' followed by whitespace or the end.
inline std::vector<std::size_t> sentence_word_counts(const std::string& text) {
    std::vector<std::size_t> out;
    std::string current;
    auto finish = [&] {
        std::istringstream words(current);
        std::string w;
        std::size_t n = 0;
        while (words >> w) ++n;
        if (n > 0) out.push_back(n);
        current.clear();
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        current += text[i];
        bool end = text[i] == '.' || text[i] == '!' || text[i] == '?';
        if (end && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) finish();
    }
    finish();
    return out;
}

/// Publication log entry: doc published `version` pinning `refs`.
struct Publication {
    std::string doc;
    int version;
    std::vector<std::pair<std::string, int>> refs;
};

/// Expected status of every published document after a publication sequence:
/// REVISION_REQUIRED iff its newest version pins a version older than that
/// dependency's newest version.
inline std::map<std::string, std::string> expected_statuses(const std::vector<Publication>& log) {
    std::map<std::string, int> latest;
    std::map<std::string, std::vector<std::pair<std::string, int>>> latest_refs;
    for (const auto& p : log) {
        latest[p.doc] = p.version;
        latest_refs[p.doc] = p.refs;
    }
    std::map<std::string, std::string> out;
    for (const auto& [doc, refs] : latest_refs) {
        bool stale = false;
        for (const auto& [dep, v] : refs) stale |= v < latest[dep];
        out[doc] = stale ? "REVISION_REQUIRED" : "PUBLISHED";
    }
    return out;
}

} // namespace oracle
