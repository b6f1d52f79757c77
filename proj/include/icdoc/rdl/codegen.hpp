#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icdoc/digest.hpp"
#include "icdoc/rdl/model.hpp"
#include "icdoc/rdl/validate.hpp"
#include "icdoc/table.hpp"
#include "icdoc/version.hpp"

namespace icdoc::rdl {

/// Human-readable register tables: one per register with columns
/// Bits, Name, SW, HW, Reset, Description, fields by descending msb.
std::vector<Table> render_tables(const RegisterMap& map);

enum class Mode { draft, publish };

/// Thrown by generate_header in publish mode when the map is incomplete.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<RdlViolation> violations);
    const std::vector<RdlViolation>& violations() const noexcept { return violations_; }

private:
    std::vector<RdlViolation> violations_;
};

/// C-preprocessor register header for the map.
///
/// The leading comment carries doc-id, version and an
/// `icdoc-checksum: sha256:<hex>` line whose digest covers the whole file
/// with that line's value replaced by `PENDING`.
std::string generate_header(const RegisterMap& map, std::string_view doc_id, const Version& version,
                            Mode mode = Mode::draft, const PropertySet& required = default_required_props());

/// `<DOCID>_<ADDRMAP>`-style identifier: uppercased, non-alphanumerics as '_'.
std::string macro_identifier(std::string_view text);

/// Checksum embedded in a generated header, if any.
std::optional<Digest> embedded_checksum(std::string_view header);

/// Digest of the header with its checksum line set to the placeholder.
Digest placeholder_digest(std::string_view header);

/// True when the embedded checksum matches the content.
bool verify_embedded_checksum(std::string_view header);

} // namespace icdoc::rdl
