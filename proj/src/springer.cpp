#include "crg/springer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace crg {

namespace {

long matrix_order(const Matrix& g) {
    constexpr long kCap = 100000;
    Matrix p = g;
    for (long k = 1; k <= kCap; ++k) {
        if (p.is_identity()) return k;
        p = p * g;
    }
    throw std::invalid_argument("matrix has no finite order");
}

Cyclotomic xi_power(long d, long k) { return Cyclotomic::root_of_unity(d, k); }

// The root vector of s_H: a nonzero column of s_H - 1.
Vector root_vector(const ReflectionGroup& group, const Hyperplane& h) {
    const Matrix& s = group.group().element(h.generator);
    const Matrix delta = s - Matrix::identity(s.rows());
    for (std::size_t c = 0; c < delta.cols(); ++c) {
        Vector col = delta.column(c);
        if (std::any_of(col.begin(), col.end(), [](const Cyclotomic& x) { return !x.is_zero(); })) return col;
    }
    throw std::logic_error("reflection with trivial root");
}

Cyclotomic dot(const Vector& a, const Vector& b) {
    Cyclotomic s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Product over j of (T - roots[j]).
Polynomial root_product(const std::vector<long>& roots) {
    Polynomial out = Polynomial::constant(1);
    for (long r : roots) out = out * Polynomial({Cyclotomic(-r), Cyclotomic(1)});
    return out;
}

// First hyperplane where the linear character f takes the value 1 on s_H.
std::optional<std::size_t> trivial_on_some_fixer(const ReflectionGroup& group, const ClassFunction& f) {
    for (std::size_t h = 0; h < group.hyperplanes().size(); ++h)
        if (value_at(group.group(), f, group.hyperplanes()[h].generator).is_one()) return h;
    return std::nullopt;
}

Json index_list(const std::vector<int>& v) {
    Json out = Json::array();
    for (int i : v) out.push_back(i + 1);
    return out;
}

}  // namespace

std::vector<long> eigenvalue_multiplicities(const Matrix& g) {
    const long m = matrix_order(g);
    std::vector<Cyclotomic> traces;
    traces.reserve(m);
    Matrix p = Matrix::identity(g.rows());
    for (long k = 0; k < m; ++k) {
        traces.push_back(p.trace());
        p = p * g;
    }
    std::vector<long> out(m);
    long total = 0;
    for (long j = 0; j < m; ++j) {
        Cyclotomic s;
        for (long k = 0; k < m; ++k) s += traces[k] * Cyclotomic::root_of_unity(m, -j * k);
        s /= Cyclotomic(m);
        if (!s.is_rational() || s.to_rational().get_den() != 1 || s.to_rational() < 0)
            throw std::logic_error("non-integral eigenvalue multiplicity");
        out[j] = s.to_rational().get_num().get_si();
        total += out[j];
    }
    if (total != static_cast<long>(g.rows())) throw std::logic_error("eigenvalue multiplicities do not sum to the rank");
    return out;
}

namespace {

EigenData assemble(const std::vector<long>& mult, const Cyclotomic& full_det, const Cyclotomic& xi) {
    const long m = static_cast<long>(mult.size());
    EigenData out;
    out.xi = xi;
    out.full_det = full_det;
    out.detprime = 1;
    const Cyclotomic xi_inv = xi.inverse();
    for (long j = 0; j < m; ++j) {
        if (mult[j] == 0) continue;
        const Cyclotomic lambda = Cyclotomic::root_of_unity(m, j);
        if (lambda == xi) {
            out.d = mult[j];
            continue;
        }
        const Cyclotomic factor = Cyclotomic(1) - xi_inv * lambda;
        for (long k = 0; k < mult[j]; ++k) out.detprime *= factor;
    }
    return out;
}

}  // namespace

EigenData eigen_data(const Matrix& g, const Cyclotomic& xi) {
    return assemble(eigenvalue_multiplicities(g), g.determinant(), xi);
}

Matrix dual_operator(const Matrix& g) { return g.inverse().transpose(); }

SpringerContext::SpringerContext(const ReflectionGroup& group, std::optional<Matrix> gamma, std::string gamma_label)
    : group_(&group), gamma_(std::move(gamma)), gamma_label_(std::move(gamma_label)) {
    if (gamma_ && gamma_->is_identity()) gamma_.reset();
    conductor_ = group.group().conductor();
    if (gamma_) {
        certificate_ = validate_normalizer(group, *gamma_);
        conductor_ = std::lcm(conductor_, gamma_->conductor());
        const FundamentalInvariants inv = fundamental_invariants(group, gamma_);
        degrees_ = inv.degrees;
        invariant_eigenvalues_ = inv.gamma_eigenvalues;
    } else {
        for (int d : invariant_degrees(group)) degrees_.push_back(d);
        invariant_eigenvalues_.assign(degrees_.size(), Cyclotomic(1));
    }
    const auto& elements = group.group().elements();
    twisted_.reserve(elements.size());
    for (const auto& g : elements) {
        twisted_.push_back(gamma_ ? g * *gamma_ : g);
        const Matrix h = dual_operator(twisted_.back());
        multiplicities_.push_back(eigenvalue_multiplicities(h));
        determinants_.push_back(h.determinant());
    }
}

EigenData SpringerContext::eigen(std::size_t element, const Cyclotomic& xi) const {
    return assemble(multiplicities_[element], determinants_[element], xi);
}

Cyclotomic SpringerContext::extension_value(const ClassFunction& chi) const {
    if (!certificate_) return 1;
    return extend_character(group_->group(), chi, *certificate_).gamma_value;
}

const SpringerContext::Exponents& SpringerContext::exponents(const ClassFunction& chi, long sigma, bool dual) const {
    sigma = mod_floor(sigma, conductor_);
    if (gcd_long(sigma, conductor_) != 1) throw std::invalid_argument("sigma is not coprime to the conductor");
    const auto key = std::make_tuple(chi.values, sigma, dual);
    if (auto it = exponent_cache_.find(key); it != exponent_cache_.end()) return it->second;

    Exponents out;
    if (!gamma_) {
        const MatrixGroup& g = group_->group();
        ClassFunction module = galois_twist(natural_character(g), GaloisAutomorphism(conductor_, sigma));
        if (dual) module = conj(module);
        std::vector<int> degrees(degrees_.begin(), degrees_.end());
        for (int m : exponents_of(fake_degree(*group_, module * chi, degrees))) out.degrees.push_back(m);
        out.eigenvalues.assign(out.degrees.size(), Cyclotomic(1));
    } else {
        const std::size_t l = group_->dimension();
        const OmegaSpace space(*group_, dual ? dual_galois_module(l, sigma) : galois_module(l, sigma));
        OmegaBasisOptions options;
        options.gamma = gamma_;
        options.require_hypotheses = false;
        const IsotypicBasis basis = omega1_basis(space, chi, "chi", options);
        if (!basis.verified() || basis.gamma_eigenvalues.size() != basis.degrees.size())
            throw std::logic_error("omega basis for the eigenvalue data failed to verify");
        out.degrees = basis.degrees;
        out.eigenvalues = basis.gamma_eigenvalues;
    }
    return exponent_cache_.emplace(key, std::move(out)).first->second;
}

AbSets ab_sets(const SpringerContext& context, long d, const ClassFunction& chi, long sigma) {
    if (d < 1) throw std::invalid_argument("d must be positive");
    AbSets out;
    out.deg_q = deg_q(context.group(), chi);
    const Cyclotomic xi = xi_power(d, 1);
    const Cyclotomic sigma_xi = xi_power(d, sigma);
    const auto& degrees = context.degrees();
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if ((context.invariant_eigenvalues()[i] * xi_power(d, -degrees[i])).is_one()) out.a.push_back(static_cast<int>(i));

    const auto& plain = context.exponents(chi, sigma, false);
    for (std::size_t j = 0; j < plain.degrees.size(); ++j) {
        const long r = out.deg_q - plain.degrees[j];
        out.r.push_back(r);
        if ((plain.eigenvalues[j] * sigma_xi.inverse() * xi_power(d, r)).is_one()) out.b.push_back(static_cast<int>(j));
    }
    const auto& dual = context.exponents(chi, sigma, true);
    for (std::size_t j = 0; j < dual.degrees.size(); ++j) {
        const long r = out.deg_q - dual.degrees[j];
        out.r_star.push_back(r);
        if ((dual.eigenvalues[j] * sigma_xi * xi_power(d, r)).is_one()) out.b_star.push_back(static_cast<int>(j));
    }
    return out;
}

RegularityReport pw_identity(const SpringerContext& context, long d, const ClassFunction& chi,
                             const std::string& chi_label, long sigma, bool starred) {
    const long field = std::lcm(context.conductor(), d);
    if (gcd_long(mod_floor(sigma, field), field) != 1)
        throw std::invalid_argument("sigma is not coprime to the field conductor");
    const ReflectionGroup& group = context.group();
    const long l = static_cast<long>(context.rank());

    RegularityReport out;
    out.d = d;
    out.xi = xi_power(d, 1);
    out.gamma_label = context.gamma_label();
    out.chi_label = chi_label;
    out.sigma = mod_floor(sigma, field);
    out.starred = starred;
    out.sets = ab_sets(context, d, chi, sigma);
    out.chi_extension = context.extension_value(chi);
    const Cyclotomic sigma_xi = xi_power(d, sigma);

    std::vector<Cyclotomic> sum(l + 1);
    for (std::size_t g = 0; g < group.order(); ++g) {
        const EigenData e = context.eigen(g, out.xi);
        Cyclotomic term = value_at(group.group(), chi, g).conj() * e.detprime.galois(sigma) / e.detprime;
        if (starred) {
            term /= e.full_det.galois(sigma);
            if (e.d % 2 != 0) term = -term;
        }
        sum[e.d] += term;
    }
    Cyclotomic prefactor = xi_power(d, out.sets.deg_q);
    if (starred) {
        for (long i = 0; i < l; ++i) prefactor *= sigma_xi;
        if (l % 2 != 0) prefactor = -prefactor;
    }
    out.lhs = Polynomial(std::move(sum)).scaled(prefactor);

    const auto& b = starred ? out.sets.b_star : out.sets.b;
    const auto& r = starred ? out.sets.r_star : out.sets.r;
    const auto& eps = context.exponents(chi, sigma, starred).eigenvalues;
    if (out.sets.a.size() == b.size()) {
        Polynomial rhs = Polynomial::constant(1);
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (std::find(b.begin(), b.end(), static_cast<int>(j)) != b.end()) {
                rhs = rhs * Polynomial({Cyclotomic(-r[j]), Cyclotomic(1)});
            } else {
                const Cyclotomic shift = starred ? sigma_xi : sigma_xi.inverse();
                rhs = rhs.scaled(Cyclotomic(1) - eps[j] * xi_power(d, r[j]) * shift);
            }
        }
        const auto& a = out.sets.a;
        for (std::size_t i = 0; i < context.degrees().size(); ++i) {
            if (std::find(a.begin(), a.end(), static_cast<int>(i)) != a.end()) continue;
            const long di = context.degrees()[i];
            rhs = rhs.scaled(Cyclotomic(di) /
                             (Cyclotomic(1) - context.invariant_eigenvalues()[i] * xi_power(d, -di)));
        }
        out.rhs = rhs;
    }
    out.equal = out.lhs == out.rhs;
    out.degree_bound = out.lhs.degree() <= static_cast<long>(out.sets.a.size());
    out.inequality = out.sets.a.size() <= out.sets.b.size() && out.sets.a.size() <= out.sets.b_star.size();
    out.regular = is_regular(context, d).regular;
    return out;
}

Json to_json(const RegularityReport& report) {
    Json r = Json::array(), rs = Json::array();
    for (long x : report.sets.r) r.push_back(x);
    for (long x : report.sets.r_star) rs.push_back(x);
    Json out = {{"d", report.d},
                {"xi", report.xi.to_string()},
                {"gamma", report.gamma_label},
                {"chi", report.chi_label},
                {"sigma", report.sigma},
                {"starred", report.starred},
                {"A", index_list(report.sets.a)},
                {"a", report.sets.a.size()},
                {"B", index_list(report.sets.b)},
                {"b", report.sets.b.size()},
                {"B_star", index_list(report.sets.b_star)},
                {"b_star", report.sets.b_star.size()},
                {"deg_q", report.sets.deg_q},
                {"r", r},
                {"r_star", rs},
                {"chi_extension_at_gamma", report.chi_extension.to_string()},
                {"lhs", report.lhs.to_string("T")},
                {"rhs", report.rhs.to_string("T")},
                {"case", report.rhs.is_zero() ? "zero" : "product"},
                {"equal", report.equal},
                {"degree_bound", report.degree_bound},
                {"inequality", report.inequality},
                {"verdict", report.verdict()}};
    out["regular"] = report.regular ? Json(*report.regular) : Json(nullptr);
    return out;
}

BiSeries::BiSeries(std::size_t y_degree, std::size_t order) : order_(order), terms_(y_degree + 1) {}

void BiSeries::add(std::size_t p, const Polynomial& series) {
    if (p >= terms_.size()) throw std::out_of_range("Y-degree beyond the series");
    terms_[p] = (terms_[p] + series).truncated(order_);
}

BiSeries BiSeries::scaled(const Cyclotomic& factor) const {
    BiSeries out = *this;
    for (auto& t : out.terms_) t = t.scaled(factor);
    return out;
}

VerificationReport molien_bigraded_check(const SpringerContext& context, const ModuleModel& module,
                                         const ClassFunction& chi, const std::string& chi_label,
                                         std::size_t order) {
    const ReflectionGroup& group = context.group();
    const MatrixGroup& g = group.group();
    const ClassFunction module_char = module_character(g, module);

    bool reflection_like = true;
    for (const auto& h : group.hyperplanes()) {
        const Matrix rho = module.image(g.element(h.generator));
        if ((rho - Matrix::identity(rho.rows())).rank() > 1) reflection_like = false;
    }
    if (!reflection_like) {
        for (std::size_t h = 0; h < group.hyperplanes().size(); ++h) {
            const long nm = restriction_multiplicities(group, module_char, h).n_h;
            if (nm >= group.hyperplanes()[h].order - n_chi(group, chi, h))
                throw HypothesisFailure("bigraded identity needs n_H(M) < e_H - n_H(chi) at hyperplane " +
                                            std::to_string(h),
                                        h);
        }
    }

    const std::size_t r = module.dimension;
    BiSeries lhs(r, order);
    for (std::size_t e = 0; e < g.order(); ++e) {
        const Matrix& x = context.twisted(e);
        const Matrix x_inv = x.inverse();
        const Polynomial numerator = det_one_plus(module.image(x_inv));
        const Polynomial denominator = det_one_minus(x_inv).series_inverse(order);
        const Cyclotomic weight = value_at(g, chi, e).conj();
        for (std::size_t p = 0; p <= r; ++p)
            if (!numerator[p].is_zero()) lhs.add(p, denominator.scaled(weight * numerator[p]));
    }
    lhs = lhs.scaled(Cyclotomic(Rational(1, static_cast<long>(g.order()))));

    const OmegaSpace space(group, module);
    OmegaBasisOptions options;
    options.gamma = context.gamma();
    options.require_hypotheses = false;
    const IsotypicBasis basis = omega1_basis(space, chi, chi_label, options);
    std::vector<Cyclotomic> eps = basis.gamma_eigenvalues;
    if (eps.empty()) eps.assign(basis.degrees.size(), Cyclotomic(1));

    Polynomial invariants = Polynomial::constant(1);
    for (std::size_t i = 0; i < context.degrees().size(); ++i)
        invariants = invariants * (Polynomial::constant(1) -
                                   Polynomial::monomial(context.degrees()[i], context.invariant_eigenvalues()[i]));
    const Polynomial hilbert = invariants.series_inverse(order);

    BiSeries rhs(r, order);
    const long q = basis.deg_q_chi;
    for (std::size_t p = 0; p <= basis.degrees.size(); ++p) {
        for (const auto& subset : subsets(basis.degrees.size(), p)) {
            long exponent = q;
            Cyclotomic coeff = 1;
            for (int i : subset) {
                exponent += basis.degrees[i] - q;
                coeff *= eps[i];
            }
            if (exponent < 0) throw std::logic_error("negative X-exponent in the bigraded product");
            if (p <= r) rhs.add(p, (Polynomial::monomial(exponent, coeff) * hilbert).truncated(order));
        }
    }

    VerificationReport out;
    out.check = "molien_bigraded";
    out.parameters = {{"group", group.name()}, {"gamma", context.gamma_label()}, {"module", module.label},
                      {"chi", chi_label},       {"order", order}};
    out.degrees_checked = static_cast<long>(order) - 1;
    out.verdict = basis.verified() && lhs == rhs;
    Json mismatches = Json::array();
    for (std::size_t p = 0; p <= r; ++p)
        for (std::size_t n = 0; n < order; ++n)
            if (lhs.coefficient(p)[n] != rhs.coefficient(p)[n])
                mismatches.push_back({{"Y", p}, {"X", n}, {"lhs", lhs.coefficient(p)[n].to_string()},
                                      {"rhs", rhs.coefficient(p)[n].to_string()}});
    Json degrees = Json::array(), eigen = Json::array();
    for (long m : basis.degrees) degrees.push_back(m);
    for (const auto& e : eps) eigen.push_back(e.to_string());
    out.witness = {{"deg_q", q}, {"exponents", degrees}, {"eigenvalues", eigen}, {"mismatches", mismatches},
                   {"reflection_like", reflection_like}};
    return out;
}

namespace {

template <typename Test>
RegularityWitness regularity_scan(const SpringerContext& context, long d, Test avoids_all) {
    RegularityWitness out;
    const Cyclotomic xi = xi_power(d, 1);
    for (std::size_t g = 0; g < context.group().order(); ++g) {
        const long dim = context.eigen(g, xi).d;
        out.max_dimension = std::max(out.max_dimension, dim);
        if (dim == 0 || out.regular) continue;
        if (avoids_all(g, xi)) {
            out.regular = true;
            out.element = g;
            out.dimension = dim;
        }
    }
    return out;
}

}  // namespace

RegularityWitness is_regular(const SpringerContext& context, long d) {
    const ReflectionGroup& group = context.group();
    std::vector<Vector> roots;
    for (const auto& h : group.hyperplanes()) roots.push_back(root_vector(group, h));
    return regularity_scan(context, d, [&](std::size_t g, const Cyclotomic& xi) {
        const auto space = eigenspace(dual_operator(context.twisted(g)), xi);
        return std::all_of(roots.begin(), roots.end(), [&](const Vector& v) {
            return std::any_of(space.begin(), space.end(), [&](const Vector& f) { return !dot(f, v).is_zero(); });
        });
    });
}

RegularityWitness is_regular_on_v(const SpringerContext& context, long d) {
    const ReflectionGroup& group = context.group();
    const Cyclotomic xi = xi_power(d, 1);
    RegularityWitness out;
    for (std::size_t g = 0; g < group.order(); ++g) {
        const auto space = eigenspace(context.twisted(g), xi);
        const long dim = static_cast<long>(space.size());
        out.max_dimension = std::max(out.max_dimension, dim);
        if (dim == 0 || out.regular) continue;
        const bool avoids = std::all_of(group.hyperplanes().begin(), group.hyperplanes().end(), [&](const Hyperplane& h) {
            return std::any_of(space.begin(), space.end(), [&](const Vector& v) { return !dot(h.alpha, v).is_zero(); });
        });
        if (avoids) {
            out.regular = true;
            out.element = g;
            out.dimension = dim;
        }
    }
    return out;
}

Json to_json(const CorollaryItem& item) {
    return {{"item", item.item}, {"applicable", item.applicable}, {"verdict", item.verdict}, {"detail", item.detail}};
}

std::vector<CorollaryItem> corollary_suite(const SpringerContext& context, const ClassFunction& chi,
                                           const std::string& chi_label, long sigma, long d) {
    const ReflectionGroup& group = context.group();
    const MatrixGroup& g = group.group();
    const ClassFunction chi_det = chi * conj(determinant_character(g));
    std::vector<CorollaryItem> out;
    auto add = [&](std::string name, bool verdict, std::string detail) {
        out.push_back({std::move(name), true, verdict, std::move(detail)});
    };
    auto not_applicable = [&](std::string name, std::size_t h, const std::string& what) {
        out.push_back({std::move(name), false, false,
                       what + " is trivial on the fixer of hyperplane " + std::to_string(h)});
    };

    const AbSets sets = ab_sets(context, d, chi, 1);
    const AbSets sets_sigma = ab_sets(context, d, chi, sigma);
    const RegularityWitness regular = is_regular(context, d);
    const std::string reg_text = regular.regular ? "regular" : "not regular";
    const std::size_t a = sets.a.size();
    const RegularityReport plain = pw_identity(context, d, chi, chi_label, 1, false);
    const RegularityReport starred = pw_identity(context, d, chi, chi_label, 1, true);

    if (!context.gamma()) {
        const Cyclotomic one = 1;
        {
            const RegularityReport at_one = pw_identity(context, 1, chi, chi_label, sigma, false);
            const bool ok = at_one.verdict() && at_one.rhs == root_product(at_one.sets.r);
            add("galois_sum_at_one", ok, "lhs " + at_one.lhs.to_string("T"));
        }
        {
            std::vector<int> expected_b, expected_a;
            for (std::size_t j = 0; j < sets.r.size(); ++j)
                if ((1 - sets.r[j]) % d == 0) expected_b.push_back(static_cast<int>(j));
            for (std::size_t i = 0; i < context.degrees().size(); ++i)
                if (context.degrees()[i] % d == 0) expected_a.push_back(static_cast<int>(i));
            add("eigenspace_sum", plain.verdict() && sets.b == expected_b && sets.a == expected_a,
                "lhs " + plain.lhs.to_string("T"));
        }
        {
            std::vector<Cyclotomic> sum(context.rank() + 1);
            for (std::size_t e = 0; e < g.order(); ++e) sum[context.eigen(e, one).d] += value_at(g, chi, e);
            const Polynomial lhs(std::move(sum));
            add("fixed_space_sum", lhs == root_product(sets.r), "lhs " + lhs.to_string("T"));
        }
        {
            std::vector<int> expected;
            for (std::size_t j = 0; j < sets.r_star.size(); ++j)
                if ((1 + sets.r_star[j]) % d == 0) expected.push_back(static_cast<int>(j));
            add("dual_eigenspace_sum", starred.verdict() && sets.b_star == expected,
                "lhs " + starred.lhs.to_string("T"));
        }
        {
            std::vector<Cyclotomic> sum(context.rank() + 1);
            for (std::size_t e = 0; e < g.order(); ++e) sum[context.eigen(e, one).d] += value_at(g, chi_det, e);
            const Polynomial lhs(std::move(sum));
            std::vector<long> negated;
            for (long r : sets.r_star) negated.push_back(-r);
            add("dual_fixed_space_sum", lhs == root_product(negated), "lhs " + lhs.to_string("T"));
        }
        {
            const AbSets twisted = ab_sets(context, d, chi_det, 1);
            std::vector<long> lhs, rhs = twisted.r;
            for (long r : sets.r_star) lhs.push_back(-r);
            std::sort(lhs.begin(), lhs.end());
            std::sort(rhs.begin(), rhs.end());
            add("dual_exponent_multisets", lhs == rhs && sets.b_star.size() == twisted.b.size(),
                "b* = " + std::to_string(sets.b_star.size()) + ", b(chi det) = " + std::to_string(twisted.b.size()));
        }
        if (regular.regular)
            add("regular_implies_balanced", a == sets_sigma.b.size(),
                "a = " + std::to_string(a) + ", b_sigma = " + std::to_string(sets_sigma.b.size()));
        else
            out.push_back({"regular_implies_balanced", false, false, "d is not regular"});
        if (auto h = trivial_on_some_fixer(group, chi_det))
            not_applicable("regularity_criterion", *h, "chi det");
        else
            add("regularity_criterion", regular.regular == (a == sets.b.size()),
                reg_text + ", a = " + std::to_string(a) + ", b = " + std::to_string(sets.b.size()));
        // The same hypothesis with b* = b(chi det), which is what the dual multiset equality yields.
        if (auto h = trivial_on_some_fixer(group, chi_det))
            not_applicable("regularity_criterion_dual", *h, "chi det");
        else
            add("regularity_criterion_dual", regular.regular == (a == sets.b_star.size()),
                reg_text + ", a = " + std::to_string(a) + ", b* = " + std::to_string(sets.b_star.size()));
    }

    add("twisted_eigenspace_sum", plain.verdict(), "lhs " + plain.lhs.to_string("T"));
    add("twisted_dual_eigenspace_sum", starred.verdict(), "lhs " + starred.lhs.to_string("T"));
    {
        const AbSets twisted = ab_sets(context, d, chi_det, 1);
        std::vector<long> lhs, rhs;
        for (int i : sets.b_star) lhs.push_back(-sets.r_star[i]);
        for (int i : twisted.b) rhs.push_back(twisted.r[i]);
        std::sort(lhs.begin(), lhs.end());
        std::sort(rhs.begin(), rhs.end());
        add("twisted_dual_multisets", lhs == rhs && sets.b_star.size() == twisted.b.size(),
            "b* = " + std::to_string(sets.b_star.size()) + ", b(chi det) = " + std::to_string(twisted.b.size()));
    }
    if (regular.regular)
        add("twisted_regular_implies_balanced", a == sets_sigma.b.size() && a == sets_sigma.b_star.size(),
            "a = " + std::to_string(a) + ", b_sigma = " + std::to_string(sets_sigma.b.size()) +
                ", b*_sigma = " + std::to_string(sets_sigma.b_star.size()));
    else
        out.push_back({"twisted_regular_implies_balanced", false, false, "d is not regular"});
    if (auto h = trivial_on_some_fixer(group, chi))
        not_applicable("twisted_regularity_criterion", *h, "chi");
    else
        add("twisted_regularity_criterion", regular.regular == (a == sets.b.size()),
            reg_text + ", a = " + std::to_string(a) + ", b = " + std::to_string(sets.b.size()));
    if (auto h = trivial_on_some_fixer(group, chi_det))
        not_applicable("twisted_dual_regularity_criterion", *h, "chi det");
    else
        add("twisted_dual_regularity_criterion", regular.regular == (a == sets.b_star.size()),
            reg_text + ", a = " + std::to_string(a) + ", b* = " + std::to_string(sets.b_star.size()));
    return out;
}

}  // namespace crg
