#include "icdoc/rdl/codegen.hpp"

#include <algorithm>
#include <sstream>

#include "icdoc/rdl/bits.hpp"

namespace icdoc::rdl {

namespace {

constexpr std::string_view checksum_key = "\n * icdoc-checksum: ";
constexpr std::string_view placeholder = "PENDING";

std::string hex(std::uint64_t v) {
    std::ostringstream s;
    s << "0x" << std::uppercase << std::hex << v;
    return s.str();
}

std::string comment_safe(std::string_view text) {
    std::string out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '\n' || c == '\r' || c == '\t') c = ' ';
        out.push_back(c);
        if (c == '*' && i + 1 < text.size() && text[i + 1] == '/') out.push_back(' ');
    }
    return out;
}

std::string describe_field(const Field& f) {
    std::string desc = f.desc.value_or("");
    if (f.display_name) desc = desc.empty() ? *f.display_name : *f.display_name + ": " + desc;
    if (f.update_rate) {
        if (!desc.empty()) desc += " ";
        desc += "(update rate: " + *f.update_rate + ")";
    }
    return desc.empty() ? "-" : desc;
}

// Start and end of the checksum value, if the header has a checksum line.
std::optional<std::pair<std::size_t, std::size_t>> checksum_value(std::string_view header) {
    auto key = header.find(checksum_key);
    if (key == std::string_view::npos) return std::nullopt;
    auto begin = key + checksum_key.size();
    auto end = header.find('\n', begin);
    if (end == std::string_view::npos) end = header.size();
    return std::pair{begin, end};
}

} // namespace

std::vector<Table> render_tables(const RegisterMap& map) {
    std::vector<Table> tables;
    for (const auto& reg : map.registers) {
        Table t;
        t.caption = reg.name;
        if (reg.display_name) t.caption += " (" + *reg.display_name + ")";
        t.caption += ": offset " + hex(reg.offset) + ", " + std::to_string(reg.regwidth) + " bits";
        if (reg.desc) t.caption += ". " + *reg.desc;
        t.header = {"Bits", "Name", "SW", "HW", "Reset", "Description"};

        if (reg.fields.empty()) {
            t.rows.push_back({std::to_string(reg.regwidth - 1) + ":0", "(reserved)", "-", "-", "-", "-"});
        }
        std::vector<const Field*> fields;
        for (const auto& f : reg.fields) fields.push_back(&f);
        std::stable_sort(fields.begin(), fields.end(), [](const Field* a, const Field* b) { return a->msb > b->msb; });
        for (const auto* f : fields) {
            t.rows.push_back({std::to_string(f->msb) + ":" + std::to_string(f->lsb), f->name,
                              f->sw ? std::string(to_string(*f->sw)) : "-",
                              f->hw ? std::string(to_string(*f->hw)) : "-", f->reset ? hex(*f->reset) : "-",
                              describe_field(*f)});
        }
        tables.push_back(std::move(t));
    }
    return tables;
}

ValidationError::ValidationError(std::vector<RdlViolation> violations)
    : std::runtime_error("register map has " + std::to_string(violations.size()) + " completeness violation(s)"),
      violations_(std::move(violations)) {}

std::string macro_identifier(std::string_view text) {
    std::string out;
    for (unsigned char c : text) {
        if (c >= 'a' && c <= 'z') out.push_back(static_cast<char>(c - 'a' + 'A'));
        else if ((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9')) out.push_back(static_cast<char>(c));
        else out.push_back('_');
    }
    return out;
}

std::string generate_header(const RegisterMap& map, std::string_view doc_id, const Version& version, Mode mode,
                            const PropertySet& required) {
    if (mode == Mode::publish) {
        if (auto violations = validate_rdl(map, required); !violations.empty()) throw ValidationError(std::move(violations));
    }

    const std::string prefix = macro_identifier(map.name);
    const std::string guard = macro_identifier(doc_id) + "_" + prefix + "_H";

    std::ostringstream out;
    out << "/*\n";
    out << " * Register definitions for addrmap " << map.name << "\n";
    if (map.display_name) out << " * " << comment_safe(*map.display_name) << "\n";
    out << " * Generated by icdoc; do not edit.\n";
    out << " * doc-id: " << doc_id << "\n";
    out << " * version: " << version.to_string() << "\n";
    out << " * icdoc-checksum: " << placeholder << "\n";
    out << " */\n";
    out << "#ifndef " << guard << "\n";
    out << "#define " << guard << "\n";

    for (const auto& reg : map.registers) {
        const std::string reg_prefix = prefix + "_" + macro_identifier(reg.name);
        out << "\n/* " << reg.name << ": " << std::to_string(reg.regwidth) << "-bit register";
        if (reg.desc) out << ", " << comment_safe(*reg.desc);
        out << " */\n";
        out << "#define " << reg_prefix << "_ADDR " << hex(reg.offset) << "\n";
        for (const auto& f : reg.fields) {
            const std::string field_prefix = reg_prefix + "_" + macro_identifier(f.name);
            out << "#define " << field_prefix << "_MASK " << hex(field_mask(f)) << "\n";
            out << "#define " << field_prefix << "_SHIFT " << f.lsb << "\n";
            if (f.reset) out << "#define " << field_prefix << "_RESET " << hex(*f.reset) << "\n";
        }
    }
    out << "\n#endif /* " << guard << " */\n";

    std::string text = out.str();
    auto value = checksum_value(text);
    auto sum = digest(std::string_view(text));
    text.replace(value->first, value->second - value->first, sum.qualified());
    return text;
}

std::optional<Digest> embedded_checksum(std::string_view header) {
    auto value = checksum_value(header);
    if (!value) return std::nullopt;
    return Digest::parse(header.substr(value->first, value->second - value->first));
}

Digest placeholder_digest(std::string_view header) {
    auto value = checksum_value(header);
    if (!value) return digest(header);
    std::string copy(header);
    copy.replace(value->first, value->second - value->first, placeholder);
    return digest(std::string_view(copy));
}

bool verify_embedded_checksum(std::string_view header) {
    auto sum = embedded_checksum(header);
    return sum && *sum == placeholder_digest(header);
}

} // namespace icdoc::rdl
