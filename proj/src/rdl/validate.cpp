#include "icdoc/rdl/validate.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace icdoc::rdl {

namespace {

constexpr std::array<std::string_view, 6> field_props{"name", "desc", "sw", "hw", "reset", "update_rate"};

bool has_prop(const Field& f, std::string_view prop) {
    if (prop == "name") return f.display_name.has_value();
    if (prop == "desc") return f.desc.has_value();
    if (prop == "sw") return f.sw.has_value();
    if (prop == "hw") return f.hw.has_value();
    if (prop == "reset") return f.reset.has_value();
    return f.update_rate.has_value();
}

std::string bit_range(const Field& f) {
    return "[" + std::to_string(f.msb) + ":" + std::to_string(f.lsb) + "]";
}

std::uint64_t range_end(const Register& r) {
    auto size = r.byte_size();
    return r.offset > UINT64_MAX - size ? UINT64_MAX : r.offset + size;
}

} // namespace

PropertySet default_required_props() { return {"sw", "reset", "desc"}; }

PropertySet normalize_props(const PropertySet& props) {
    PropertySet out;
    for (const auto& p : props) {
        std::string_view name = p;
        if (name == "sw_access") name = "sw";
        else if (name == "hw_access") name = "hw";
        if (std::find(field_props.begin(), field_props.end(), name) == field_props.end()) {
            throw std::invalid_argument("unknown field property '" + p + "'");
        }
        out.emplace(name);
    }
    return out;
}

std::vector<RdlViolation> validate_rdl(const RegisterMap& map, const PropertySet& required_field_props) {
    auto required = normalize_props(required_field_props);
    std::vector<RdlViolation> out;

    if (map.endianness == Endianness::unspecified) {
        out.push_back({"RDL-C5", "", "", map.line,
                       "addrmap '" + map.name + "' does not specify endianness (bigendian or littleendian)"});
    }

    for (std::size_t i = 0; i < map.registers.size(); ++i) {
        const auto& reg = map.registers[i];
        if (!reg.desc) out.push_back({"RDL-C6", reg.name, "", reg.line, "register '" + reg.name + "' has no desc"});

        for (std::size_t k = 0; k < i; ++k) {
            const auto& other = map.registers[k];
            if (reg.offset < range_end(other) && other.offset < range_end(reg)) {
                out.push_back({"RDL-C4", reg.name, "", reg.line,
                               "register '" + reg.name + "' overlaps the address range of '" + other.name + "'"});
            }
        }

        for (std::size_t j = 0; j < reg.fields.size(); ++j) {
            const auto& f = reg.fields[j];
            std::string where = reg.name + "." + f.name;
            for (auto prop : field_props) {
                if (required.contains(prop) && !has_prop(f, prop)) {
                    out.push_back({"RDL-C1", reg.name, f.name, f.line,
                                   "field '" + where + "' lacks required property '" + std::string(prop) + "'"});
                }
            }
            if (f.msb >= reg.regwidth) {
                out.push_back({"RDL-C3", reg.name, f.name, f.line,
                               "field '" + where + "' " + bit_range(f) + " exceeds regwidth " +
                                   std::to_string(reg.regwidth)});
            }
            if (f.reset && f.width() < 64 && *f.reset >> f.width() != 0) {
                out.push_back({"RDL-C7", reg.name, f.name, f.line,
                               "reset value of field '" + where + "' does not fit in " + std::to_string(f.width()) +
                                   " bits"});
            }
            for (std::size_t k = 0; k < j; ++k) {
                const auto& other = reg.fields[k];
                if (f.lsb <= other.msb && other.lsb <= f.msb) {
                    out.push_back({"RDL-C2", reg.name, f.name, f.line,
                                   "field '" + where + "' " + bit_range(f) + " overlaps '" + other.name + "' " +
                                       bit_range(other)});
                }
            }
        }
    }

    std::stable_sort(out.begin(), out.end(), [](const RdlViolation& a, const RdlViolation& b) { return a.line < b.line; });
    return out;
}

} // namespace icdoc::rdl
