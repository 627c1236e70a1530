#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crg/chartab.hpp"
#include "crg/io.hpp"

namespace crg {

/// The four hyperplane types of (M, chi) at one hyperplane, with the data that decides them.
struct TypeFlags {
    bool good = false;
    bool excellent = false;
    bool mchi_good = false;
    bool mchi_acceptable = false;

    std::size_t hyperplane = 0;
    int orbit = 0;
    std::string module_label;
    std::string chi_label;

    long n_h_module = 0;
    int n_h_chi = 0;
    int e_h = 1;
    std::vector<int> exponents;  // j_1 <= ... <= j_r
    /// Positions in `exponents` of a split with both sums >= e_H - n_H(chi).
    std::optional<std::pair<std::vector<int>, std::vector<int>>> failing_split;
};

/// Excellent is read inclusively: s_H acts on M as the identity or as a reflection.
TypeFlags classify_hyperplane(const ReflectionGroup& group, const ClassFunction& module, const ClassFunction& linear,
                              std::size_t hyperplane);

/// Rows over (orbit, irreducible M, linear chi), orbit-major, then table order.
struct ClassificationTable {
    std::string group;
    std::size_t orbit_count = 0;
    std::vector<std::size_t> orbit_hyperplanes;  // first hyperplane of each orbit
    std::vector<int> orbit_sizes;
    std::vector<std::size_t> module_rows;        // table rows used as M
    std::vector<std::size_t> linear_rows;        // table rows used as chi
    std::vector<TypeFlags> rows;

    const TypeFlags& at(std::size_t orbit, std::size_t module_index, std::size_t chi_index) const;
    /// By labels; throws std::out_of_range if absent.
    const TypeFlags& at(std::size_t orbit, const std::string& module_label, const std::string& chi_label) const;
};

ClassificationTable classify_group(const ReflectionGroup& group, const CharacterTable& table);

struct AuditViolation {
    std::string rule;
    TypeFlags row;
};

/// Checks the implications between the four types row by row, the e_H = 2
/// case analysis, and constancy of the flags along each orbit.
std::vector<AuditViolation> consistency_audit(const ReflectionGroup& group, const CharacterTable& table,
                                              const ClassificationTable& classification);

Json to_json(const TypeFlags& flags);
Json to_json(const ClassificationTable& table);
Json to_json(const AuditViolation& violation);
/// One block per orbit.
std::string to_markdown(const ClassificationTable& table);

/// Reads flag values by name: good, excellent, mchi_good, mchi_acceptable.
/// Throws std::invalid_argument for an unknown name.
bool flag_value(const TypeFlags& flags, const std::string& name);

}  // namespace crg
