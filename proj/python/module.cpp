#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "icdoc/digest.hpp"
#include "icdoc/errors.hpp"
#include "icdoc/gates/gates.hpp"
#include "icdoc/pipeline/build.hpp"
#include "icdoc/pipeline/compile.hpp"
#include "icdoc/rdl/bits.hpp"
#include "icdoc/rdl/codegen.hpp"
#include "icdoc/rdl/parse.hpp"
#include "icdoc/rdl/validate.hpp"
#include "icdoc/version.hpp"

namespace py = pybind11;
using namespace icdoc;

namespace {

rdl::Field bit_range(unsigned msb, unsigned lsb) {
    if (msb < lsb || msb > 63) throw py::value_error("invalid bit range [" + std::to_string(msb) + ":" + std::to_string(lsb) + "]");
    rdl::Field f;
    f.msb = msb;
    f.lsb = lsb;
    return f;
}

template <typename T>
py::object optional(const std::optional<T>& value) {
    return value ? py::cast(*value) : py::none();
}

py::dict field_dict(const rdl::Field& f) {
    py::dict d;
    d["name"] = f.name;
    d["msb"] = f.msb;
    d["lsb"] = f.lsb;
    d["sw"] = f.sw ? py::cast(std::string(rdl::to_string(*f.sw))) : py::none();
    d["hw"] = f.hw ? py::cast(std::string(rdl::to_string(*f.hw))) : py::none();
    d["reset"] = optional(f.reset);
    d["desc"] = optional(f.desc);
    d["update_rate"] = optional(f.update_rate);
    d["line"] = f.line;
    return d;
}

py::dict map_dict(const rdl::RegisterMap& map) {
    py::dict d;
    d["name"] = map.name;
    d["display_name"] = optional(map.display_name);
    d["desc"] = optional(map.desc);
    d["endianness"] = map.endianness == rdl::Endianness::big      ? "big"
                      : map.endianness == rdl::Endianness::little ? "little"
                                                                  : "unspecified";
    py::list regs;
    for (const auto& r : map.registers) {
        py::dict rd;
        rd["name"] = r.name;
        rd["display_name"] = optional(r.display_name);
        rd["desc"] = optional(r.desc);
        rd["regwidth"] = r.regwidth;
        rd["offset"] = r.offset;
        rd["line"] = r.line;
        py::list fields;
        for (const auto& f : r.fields) fields.append(field_dict(f));
        rd["fields"] = fields;
        regs.append(rd);
    }
    d["registers"] = regs;
    d["line"] = map.line;
    return d;
}

rdl::PropertySet props(const std::optional<std::vector<std::string>>& required) {
    if (!required) return rdl::default_required_props();
    return {required->begin(), required->end()};
}

py::dict report_dict(const gates::GateReport& report) {
    py::list violations;
    for (const auto& v : report.violations) {
        py::dict d;
        d["rule_id"] = v.rule_id;
        d["severity"] = std::string(gates::to_string(v.severity));
        d["line"] = v.line;
        d["context"] = v.context;
        d["message"] = v.message;
        violations.append(d);
    }
    py::dict d;
    d["verdict"] = report.passed() ? "pass" : "fail";
    d["errors"] = report.errors;
    d["warnings"] = report.warnings;
    d["violations"] = violations;
    d["text"] = gates::report_to_text(report);
    return d;
}

pipeline::CompileInputs inputs(const std::string& source, const std::vector<std::string>& glossaries,
                               const std::optional<std::string>& config, const gates::LinkResolver& resolver) {
    pipeline::CompileInputs in;
    in.source = source;
    for (std::size_t i = 0; i < glossaries.size(); ++i) {
        in.glossaries.push_back(pipeline::GlossarySource{"glossary" + std::to_string(i + 1), glossaries[i]});
    }
    if (config) in.config = gates::parse_config(*config);
    in.link_resolver = resolver;
    return in;
}

} // namespace

PYBIND11_MODULE(_icdoc, m) {
    m.doc() = "Interface control documents as code";

    static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
    static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
    static py::exception<rdl::ValidationError> validation_error(m, "ValidationError", PyExc_ValueError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::object err = py::handle(parse_error.ptr())(e.what());
            err.attr("line") = e.line();
            err.attr("detail") = e.message();
            py::set_error(parse_error, err);
        } catch (const ConfigError& e) {
            py::set_error(config_error, e.what());
        } catch (const rdl::ValidationError& e) {
            py::set_error(validation_error, e.what());
        }
    });

    m.def("sha256", [](py::bytes data) { return digest(std::string_view(data)).hex(); }, py::arg("data"),
          "Hex SHA-256 digest of a bytes object.");

    m.def("compare_versions", [](const std::string& a, const std::string& b) {
        auto c = Version::from_string(a) <=> Version::from_string(b);
        return c < 0 ? -1 : c > 0 ? 1 : 0;
    });

    m.def("field_mask", [](unsigned msb, unsigned lsb) { return rdl::field_mask(bit_range(msb, lsb)); },
          py::arg("msb"), py::arg("lsb"));
    m.def("pack_field", [](std::uint64_t reg, unsigned msb, unsigned lsb, std::uint64_t value) {
        try {
            return rdl::pack_field(reg, bit_range(msb, lsb), value);
        } catch (const std::out_of_range& e) {
            throw py::value_error(e.what());
        }
    }, py::arg("reg_value"), py::arg("msb"), py::arg("lsb"), py::arg("value"));
    m.def("extract_field", [](std::uint64_t reg, unsigned msb, unsigned lsb) { return rdl::extract_field(reg, bit_range(msb, lsb)); },
          py::arg("reg_value"), py::arg("msb"), py::arg("lsb"));

    m.def("parse_rdl", [](const std::string& source) { return map_dict(rdl::parse_rdl(source)); }, py::arg("source"));
    m.def("validate_rdl", [](const std::string& source, std::optional<std::vector<std::string>> required) {
        py::list out;
        for (const auto& v : rdl::validate_rdl(rdl::parse_rdl(source), props(required))) {
            py::dict d;
            d["rule_id"] = v.rule_id;
            d["reg"] = v.reg;
            d["field"] = v.field;
            d["line"] = v.line;
            d["message"] = v.message;
            out.append(d);
        }
        return out;
    }, py::arg("source"), py::arg("required") = py::none());
    m.def("generate_header", [](const std::string& source, const std::string& doc_id, const std::string& version, bool publish,
                                std::optional<std::vector<std::string>> required) {
        return rdl::generate_header(rdl::parse_rdl(source), doc_id, Version::from_string(version),
                                    publish ? rdl::Mode::publish : rdl::Mode::draft, props(required));
    }, py::arg("source"), py::arg("doc_id"), py::arg("version"), py::arg("publish") = false, py::arg("required") = py::none());
    m.def("verify_header_checksum", [](const std::string& header) { return rdl::verify_embedded_checksum(header); });

    m.def("run_gates", [](const std::string& source, const std::vector<std::string>& glossaries, std::optional<std::string> config,
                          std::function<bool(std::string)> link_exists) {
        gates::LinkResolver resolver;
        if (link_exists) resolver = [link_exists](std::string_view t) { return link_exists(std::string(t)); };
        else resolver = [](std::string_view) { return true; };
        return report_dict(pipeline::compile(inputs(source, glossaries, config, resolver)).report);
    }, py::arg("source"), py::arg("glossaries") = std::vector<std::string>{}, py::arg("config") = py::none(),
       py::arg("link_exists") = py::none(), "Parse, expand and gate an ICD given as text.");

    m.def("render", [](const std::string& source, const std::vector<std::string>& glossaries) {
        auto compiled = pipeline::compile(inputs(source, glossaries, std::nullopt, [](std::string_view) { return true; }));
        py::dict files;
        for (auto& f : pipeline::generate_artifacts(compiled, rdl::Mode::draft, rdl::default_required_props())) {
            files[py::str(f.path)] = f.contents;
        }
        return files;
    }, py::arg("source"), py::arg("glossaries") = std::vector<std::string>{},
       "Generated HTML and headers keyed by file name.");

    m.def("build", [](const std::filesystem::path& source, const std::filesystem::path& out_dir, const std::string& mode,
                      std::optional<std::filesystem::path> config, std::vector<std::filesystem::path> glossaries,
                      std::optional<std::filesystem::path> history, std::optional<std::string> tracker,
                      std::optional<std::string> src, std::optional<std::string> canonical) {
        if (mode != "draft" && mode != "publish") throw py::value_error("mode must be 'draft' or 'publish'");
        pipeline::BuildOptions o{source, out_dir, mode == "publish" ? rdl::Mode::publish : rdl::Mode::draft,
                                 config, std::move(glossaries), history, tracker, src, canonical};
        pipeline::BuildOutcome r;
        {
            py::gil_scoped_release release;
            r = pipeline::build(o);
        }
        py::dict d;
        d["exit_code"] = static_cast<int>(r.exit_code);
        d["outputs"] = r.outputs;
        d["messages"] = r.messages;
        d["report"] = r.report ? py::object(report_dict(*r.report)) : py::none();
        return d;
    }, py::arg("source"), py::arg("out_dir"), py::arg("mode") = "draft", py::arg("config") = py::none(),
       py::arg("glossaries") = std::vector<std::filesystem::path>{}, py::arg("history") = py::none(),
       py::arg("tracker") = py::none(), py::arg("src") = py::none(), py::arg("canonical") = py::none());

    m.def("check", [](const std::string& manifest, const std::filesystem::path& local_dir, std::optional<std::string> tracker,
                      const std::string& reporter) {
        pipeline::CheckOutcome r;
        {
            py::gil_scoped_release release;
            r = pipeline::check(pipeline::CheckOptions{manifest, local_dir, tracker, reporter});
        }
        return py::make_tuple(static_cast<int>(r.exit_code), r.lines);
    }, py::arg("manifest"), py::arg("local_dir"), py::arg("tracker") = py::none(), py::arg("reporter") = "icdoc-check",
       "Returns (exit_code, lines).");
}
