#include "crg/hyptypes.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace crg {

namespace {

// A split of the nonzero exponents with both sums >= bound, if any.
std::optional<std::pair<std::vector<int>, std::vector<int>>> find_failing_split(const std::vector<int>& exponents,
                                                                                 long bound) {
    std::vector<int> nonzero;
    for (std::size_t i = 0; i < exponents.size(); ++i)
        if (exponents[i] > 0) nonzero.push_back(static_cast<int>(i));
    const std::size_t count = nonzero.size();
    if (count > 24) throw std::invalid_argument("too many nonzero exponents for an exhaustive split search");
    // Fixing the first nonzero index in I_1 halves the search.
    const unsigned long splits = count == 0 ? 0UL : 1UL << (count - 1);
    for (unsigned long mask = 0; mask < splits; ++mask) {
        std::vector<int> first{nonzero[0]}, second;
        long sum_first = exponents[nonzero[0]], sum_second = 0;
        for (std::size_t b = 1; b < count; ++b) {
            const int i = nonzero[b];
            if (mask >> (b - 1) & 1UL) {
                first.push_back(i);
                sum_first += exponents[i];
            } else {
                second.push_back(i);
                sum_second += exponents[i];
            }
        }
        if (sum_first >= bound && sum_second >= bound) return std::make_pair(first, second);
    }
    return std::nullopt;
}

std::size_t minus_one_multiplicity(const TypeFlags& row) {
    std::size_t count = 0;
    for (int j : row.exponents) count += j == 1;
    return count;
}

}  // namespace

TypeFlags classify_hyperplane(const ReflectionGroup& group, const ClassFunction& module, const ClassFunction& linear,
                              std::size_t hyperplane) {
    const RestrictionData data = restriction_multiplicities(group, module, hyperplane);
    TypeFlags out;
    out.hyperplane = hyperplane;
    out.orbit = group.hyperplanes()[hyperplane].orbit;
    out.e_h = group.hyperplanes()[hyperplane].order;
    out.n_h_module = data.n_h;
    out.n_h_chi = n_chi(group, linear, hyperplane);
    out.exponents = data.exponents;
    const long r = static_cast<long>(data.exponents.size());
    out.good = out.n_h_module < out.e_h;
    out.excellent = data.multiplicities[0] >= r - 1;
    out.mchi_good = out.n_h_module + out.n_h_chi < out.e_h;
    out.failing_split = find_failing_split(data.exponents, out.e_h - out.n_h_chi);
    out.mchi_acceptable = !out.failing_split.has_value();
    return out;
}

const TypeFlags& ClassificationTable::at(std::size_t orbit, std::size_t module_index, std::size_t chi_index) const {
    return rows.at((orbit * module_rows.size() + module_index) * linear_rows.size() + chi_index);
}

const TypeFlags& ClassificationTable::at(std::size_t orbit, const std::string& module_label,
                                         const std::string& chi_label) const {
    for (const auto& row : rows)
        if (static_cast<std::size_t>(row.orbit) == orbit && row.module_label == module_label && row.chi_label == chi_label)
            return row;
    throw std::out_of_range("no classification row for (" + module_label + ", " + chi_label + ")");
}

ClassificationTable classify_group(const ReflectionGroup& group, const CharacterTable& table) {
    ClassificationTable out;
    out.group = group.name();
    out.orbit_count = group.orbit_count();
    out.orbit_hyperplanes.assign(out.orbit_count, 0);
    out.orbit_sizes.assign(out.orbit_count, 0);
    for (std::size_t h = group.hyperplanes().size(); h-- > 0;) {
        const int orbit = group.hyperplanes()[h].orbit;
        out.orbit_hyperplanes[orbit] = h;
        ++out.orbit_sizes[orbit];
    }
    for (std::size_t i = 0; i < table.size(); ++i) out.module_rows.push_back(i);
    out.linear_rows = table.linear();
    for (std::size_t orbit = 0; orbit < out.orbit_count; ++orbit) {
        for (std::size_t m : out.module_rows) {
            for (std::size_t c : out.linear_rows) {
                TypeFlags row = classify_hyperplane(group, table[m], table[c], out.orbit_hyperplanes[orbit]);
                row.module_label = table.label(m);
                row.chi_label = table.label(c);
                out.rows.push_back(std::move(row));
            }
        }
    }
    return out;
}

std::vector<AuditViolation> consistency_audit(const ReflectionGroup& group, const CharacterTable& table,
                                              const ClassificationTable& classification) {
    std::vector<AuditViolation> out;
    auto report = [&](bool holds, const char* rule, const TypeFlags& row) {
        if (!holds) out.push_back({rule, row});
    };
    const std::size_t modules = classification.module_rows.size();
    const std::size_t linears = classification.linear_rows.size();
    std::optional<std::size_t> trivial_index;
    for (std::size_t c = 0; c < linears; ++c)
        if (classification.linear_rows[c] == 0) trivial_index = c;
    if (!trivial_index) throw std::invalid_argument("classification lacks the trivial character");

    for (std::size_t orbit = 0; orbit < classification.orbit_count; ++orbit) {
        for (std::size_t m = 0; m < modules; ++m) {
            const auto dual_row = table.find(conj(table[classification.module_rows[m]]));
            std::optional<std::size_t> dual_index;
            for (std::size_t k = 0; k < modules && dual_row; ++k)
                if (classification.module_rows[k] == *dual_row) dual_index = k;
            bool acceptable_for_all = true;
            for (std::size_t c = 0; c < linears; ++c) acceptable_for_all &= classification.at(orbit, m, c).mchi_acceptable;

            for (std::size_t c = 0; c < linears; ++c) {
                const TypeFlags& row = classification.at(orbit, m, c);
                const TypeFlags& trivial = classification.at(orbit, m, *trivial_index);
                report(!row.excellent || row.good, "excellent_implies_good", row);
                if (dual_index) {
                    const bool dual_good = classification.at(orbit, *dual_index, c).good;
                    report(row.excellent == (row.good && dual_good), "excellent_iff_good_and_dual_good", row);
                }
                report(!row.mchi_good || row.good, "mchi_good_implies_good", row);
                report(row.excellent == acceptable_for_all, "excellent_iff_acceptable_for_all_chi", row);
                report(!row.mchi_good || row.mchi_acceptable, "mchi_good_implies_acceptable", row);
                report(row.good == trivial.mchi_good, "good_iff_trivial_chi_good", row);
                report(!row.good || trivial.mchi_acceptable, "good_implies_trivial_chi_acceptable", row);

                if (row.e_h == 2) {
                    const std::size_t minus = minus_one_multiplicity(row);
                    report(row.good == row.excellent && row.good == (minus <= 1), "order_two_good_iff_excellent", row);
                    if (row.n_h_chi != 0) {
                        report(row.mchi_acceptable == (minus <= 1), "order_two_nontrivial_chi_acceptable", row);
                        report(row.mchi_good == (minus == 0), "order_two_nontrivial_chi_good", row);
                    } else {
                        report(row.mchi_acceptable == (minus <= 3), "order_two_trivial_chi_acceptable", row);
                        report(row.mchi_good == (minus <= 1), "order_two_trivial_chi_good", row);
                    }
                }
            }
        }
    }

    // Every hyperplane of an orbit must carry the flags of its representative.
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h) {
        const std::size_t orbit = group.hyperplanes()[h].orbit;
        if (classification.orbit_hyperplanes.at(orbit) == h) continue;
        for (std::size_t m = 0; m < modules; ++m) {
            for (std::size_t c = 0; c < linears; ++c) {
                const TypeFlags& row = classification.at(orbit, m, c);
                const TypeFlags other = classify_hyperplane(group, table[classification.module_rows[m]],
                                                            table[classification.linear_rows[c]], h);
                const bool same = other.good == row.good && other.excellent == row.excellent &&
                                  other.mchi_good == row.mchi_good && other.mchi_acceptable == row.mchi_acceptable;
                report(same, "orbit_constancy", row);
            }
        }
    }
    return out;
}

Json to_json(const TypeFlags& flags) {
    Json j = {{"orbit", flags.orbit},
              {"hyperplane", flags.hyperplane},
              {"module", flags.module_label},
              {"chi", flags.chi_label},
              {"good", flags.good},
              {"excellent", flags.excellent},
              {"mchi_good", flags.mchi_good},
              {"mchi_acceptable", flags.mchi_acceptable},
              {"n_h_module", flags.n_h_module},
              {"n_h_chi", flags.n_h_chi},
              {"e_h", flags.e_h},
              {"exponents", flags.exponents}};
    if (flags.failing_split) j["failing_split"] = {flags.failing_split->first, flags.failing_split->second};
    return j;
}

Json to_json(const ClassificationTable& table) {
    Json orbits = Json::array();
    for (std::size_t o = 0; o < table.orbit_count; ++o)
        orbits.push_back({{"orbit", o}, {"hyperplane", table.orbit_hyperplanes[o]}, {"size", table.orbit_sizes[o]}});
    Json rows = Json::array();
    for (const auto& row : table.rows) rows.push_back(to_json(row));
    return {{"group", table.group}, {"orbits", orbits}, {"rows", rows}};
}

Json to_json(const AuditViolation& violation) { return {{"rule", violation.rule}, {"row", to_json(violation.row)}}; }

std::string to_markdown(const ClassificationTable& table) {
    auto mark = [](bool b) { return b ? "yes" : "no"; };
    std::ostringstream os;
    os << "# " << table.group << "\n";
    for (std::size_t o = 0; o < table.orbit_count; ++o) {
        const auto first = std::find_if(table.rows.begin(), table.rows.end(),
                                        [&](const TypeFlags& r) { return static_cast<std::size_t>(r.orbit) == o; });
        os << "\n## Orbit " << o << " (" << table.orbit_sizes[o] << " hyperplanes, e_H = "
           << (first != table.rows.end() ? first->e_h : 0) << ")\n\n";
        os << "| M | chi | good | excellent | (M,chi)-good | (M,chi)-acceptable | n_H(M) | n_H(chi) |\n";
        os << "|---|---|---|---|---|---|---|---|\n";
        for (const auto& row : table.rows) {
            if (static_cast<std::size_t>(row.orbit) != o) continue;
            os << "| " << row.module_label << " | " << row.chi_label << " | " << mark(row.good) << " | "
               << mark(row.excellent) << " | " << mark(row.mchi_good) << " | " << mark(row.mchi_acceptable) << " | "
               << row.n_h_module << " | " << row.n_h_chi << " |\n";
        }
    }
    return os.str();
}

bool flag_value(const TypeFlags& flags, const std::string& name) {
    if (name == "good") return flags.good;
    if (name == "excellent") return flags.excellent;
    if (name == "mchi_good") return flags.mchi_good;
    if (name == "mchi_acceptable") return flags.mchi_acceptable;
    throw std::invalid_argument("unknown flag " + name);
}

}  // namespace crg
