#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "icdoc/table.hpp"
#include "icdoc/version.hpp"

namespace icdoc::markup {

/// Half-open byte range within the raw text of the owning RichText.
struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;

    friend bool operator==(const Span&, const Span&) = default;
};

struct TextRun {
    std::string value;
    friend bool operator==(const TextRun&, const TextRun&) = default;
};

struct Link {
    std::string target;
    std::string label;
    friend bool operator==(const Link&, const Link&) = default;
};

struct TermRef {
    std::string name;
    friend bool operator==(const TermRef&, const TermRef&) = default;
};

struct IcdRef {
    std::string doc_id;
    Version version;
    /// Canonical location, filled in by macro expansion when the reference
    /// resolves. Unresolved references stay empty and are reported by gates.
    std::optional<std::string> location;
    friend bool operator==(const IcdRef&, const IcdRef&) = default;
};

struct InlineNode {
    std::variant<TextRun, Link, TermRef, IcdRef> content;
    Span span;
    std::size_t line = 0;

    friend bool operator==(const InlineNode&, const InlineNode&) = default;
};

/// A run of inline markup: its raw source text (lines joined with '\n') and
/// the nodes covering it in order.
struct RichText {
    std::string raw;
    std::vector<InlineNode> nodes;
    std::size_t line = 0;

    /// Display text with macros replaced by their visible content.
    std::string plain() const;

    friend bool operator==(const RichText&, const RichText&) = default;
};

struct Heading {
    int level = 2;
    RichText text;
    friend bool operator==(const Heading&, const Heading&) = default;
};

struct Paragraph {
    RichText text;
    friend bool operator==(const Paragraph&, const Paragraph&) = default;
};

struct List {
    std::vector<RichText> items;
    friend bool operator==(const List&, const List&) = default;
};

enum class MacroKind { glossary, doclog, references };

std::string_view macro_name(MacroKind kind) noexcept;

struct MacroBlock {
    MacroKind kind;
    friend bool operator==(const MacroBlock&, const MacroBlock&) = default;
};

struct RdlBlock {
    std::string source;
    std::size_t open_fence = 0;
    std::size_t close_fence = 0;
    /// Document line holding the first line of `source`.
    std::size_t first_line() const noexcept { return open_fence + 1; }
    friend bool operator==(const RdlBlock&, const RdlBlock&) = default;
};

struct Definition {
    std::string term;
    std::string definition;
    /// False when the term is referenced but absent from the glossary.
    bool defined = true;
    friend bool operator==(const Definition&, const Definition&) = default;
};

struct DefinitionList {
    std::vector<Definition> entries;
    friend bool operator==(const DefinitionList&, const DefinitionList&) = default;
};

enum class Origin { source, generated };

struct Block {
    std::variant<Heading, Paragraph, List, MacroBlock, RdlBlock, DefinitionList, Table> content;
    std::size_t line = 0;
    Origin origin = Origin::source;

    template <typename T>
    const T* as() const noexcept { return std::get_if<T>(&content); }

    friend bool operator==(const Block&, const Block&) = default;
};

struct Document {
    std::string title;
    std::vector<std::pair<std::string, std::string>> attributes;
    std::vector<Block> blocks;

    const std::string* attribute(std::string_view name) const noexcept;
    const std::string& doc_id() const;
    Version version() const;

    friend bool operator==(const Document&, const Document&) = default;
};

/// HTML anchor id for a glossary term.
std::string term_anchor(std::string_view term);

} // namespace icdoc::markup
