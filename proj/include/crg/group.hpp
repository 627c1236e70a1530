#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

struct ConjugacyClass {
    std::size_t representative = 0;
    std::vector<std::size_t> members;  // sorted element indices
};

/// Finite matrix group with a fixed element numbering.
///
/// Element 0 is the identity; the rest follow breadth-first order from the
/// identity, each new element being generator * earlier element with the
/// generator index breaking ties.
class MatrixGroup {
public:
    static constexpr std::size_t kDefaultCap = 10000;
    /// kDefaultCap unless overridden by the CRG_GROUP_CAP environment variable.
    static std::size_t default_cap();

    /// Throws std::invalid_argument for a non-invertible or mis-shaped generator
    /// and std::runtime_error("group too large or infinite") beyond the cap.
    static MatrixGroup close(const std::vector<Matrix>& generators, std::size_t cap = default_cap());

    std::size_t dimension() const { return dimension_; }
    std::size_t order() const { return elements_.size(); }
    long conductor() const { return conductor_; }
    const std::vector<Matrix>& generators() const { return generators_; }
    std::size_t generator_index(std::size_t k) const { return generator_index_[k]; }
    const Matrix& element(std::size_t i) const { return elements_[i]; }
    const std::vector<Matrix>& elements() const { return elements_; }

    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::size_t power(std::size_t a, long k) const;
    std::size_t element_order(std::size_t a) const { return element_order_[a]; }
    /// Least common multiple of element orders.
    long exponent() const;
    std::optional<std::size_t> find(const Matrix& m) const;

    const std::vector<ConjugacyClass>& classes() const { return classes_; }
    std::size_t class_of(std::size_t element) const { return class_of_[element]; }
    std::size_t class_count() const { return classes_.size(); }

    /// Sorted element indices of the subgroup generated by the given elements.
    std::vector<std::size_t> subgroup(const std::vector<std::size_t>& generators) const;
    /// Sorted element indices of the commutator subgroup.
    std::vector<std::size_t> derived_subgroup() const;

private:
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint32_t>& key) const;
    };

    void build_tables();
    void build_classes();
    std::size_t lookup_key(const std::vector<std::uint32_t>& key) const;

    std::size_t dimension_ = 0;
    long conductor_ = 1;
    std::vector<Matrix> generators_;
    std::vector<std::size_t> generator_index_;
    std::vector<Matrix> elements_;
    // Permutation action on a finite spanning orbit of vectors; the first
    // `dimension_` points are the standard basis.
    std::vector<std::vector<std::uint32_t>> perms_;
    std::unordered_map<std::vector<std::uint32_t>, std::size_t, KeyHash> index_of_key_;
    std::unordered_map<Matrix, std::size_t> index_of_matrix_;
    std::vector<std::uint16_t> table_;  // filled when the group is small
    std::vector<std::size_t> inverse_;
    std::vector<std::size_t> element_order_;
    std::vector<ConjugacyClass> classes_;
    std::vector<std::size_t> class_of_;
};

struct Hyperplane {
    Vector alpha;                     // linear form with kernel H, first nonzero entry 1
    int order = 1;                    // e_H
    std::size_t generator = 0;        // s_H, with det(s_H) = exp(2 pi i / e_H)
    std::vector<std::size_t> fixer;   // G_H = {1, s_H, ..., s_H^{e_H - 1}} in that order
    int orbit = 0;
};

/// Finite group generated by reflections, with its reflection arrangement.
class ReflectionGroup {
public:
    /// Throws std::invalid_argument("not a reflection group") unless the
    /// reflections of the group generate it.
    ReflectionGroup(MatrixGroup group, std::string name);

    const MatrixGroup& group() const { return group_; }
    const std::string& name() const { return name_; }
    std::size_t dimension() const { return group_.dimension(); }
    std::size_t order() const { return group_.order(); }

    const std::vector<std::size_t>& reflections() const { return reflections_; }
    const std::vector<Hyperplane>& hyperplanes() const { return hyperplanes_; }
    std::size_t orbit_count() const { return orbit_count_; }
    /// Index of g(H) for element index g.
    std::size_t act_on_hyperplane(std::size_t element, std::size_t hyperplane) const;
    std::optional<std::size_t> find_hyperplane(const Vector& alpha) const;

private:
    MatrixGroup group_;
    std::string name_;
    std::vector<std::size_t> reflections_;
    std::vector<Hyperplane> hyperplanes_;
    std::size_t orbit_count_ = 0;
};

/// True when g - id has rank exactly one (g need not be diagonalizable-checked
/// here; finite order makes it so).
bool is_reflection(const Matrix& g);

/// Certificate that gamma normalizes G and has finite order.
struct NormalizerCertificate {
    long order = 1;            // order of gamma
    MatrixGroup extended;      // <G, gamma>
    std::size_t gamma = 0;     // index of gamma in `extended`
    std::vector<std::size_t> base_elements;  // index in `extended` of each element of G
};

/// Throws std::invalid_argument("gamma does not normalize the group") and
/// std::runtime_error from closure.
NormalizerCertificate validate_normalizer(const ReflectionGroup& group, const Matrix& gamma,
                                          std::size_t cap = MatrixGroup::default_cap());

}  // namespace crg
