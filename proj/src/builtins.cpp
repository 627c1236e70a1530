#include "crg/builtins.hpp"

#include <cstdlib>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace crg {

namespace {

long factorial(int n) {
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_order(const ReflectionGroup& group, long expected) {
    if (static_cast<long>(group.order()) != expected) {
        std::ostringstream os;
        os << group.name() << " has order " << group.order() << ", expected " << expected;
        throw std::logic_error(os.str());
    }
}

}  // namespace

std::string data_directory() {
    if (const char* env = std::getenv("CRG_DATA_DIR")) return env;
#ifdef CRG_DATA_DIR
    return CRG_DATA_DIR;
#else
    return "data";
#endif
}

ReflectionGroup symmetric_group(int n) {
    if (n < 2) throw std::invalid_argument("sym(n) needs n >= 2");
    if (n > 8) throw std::invalid_argument("sym(n) is limited to n <= 8");
    const std::size_t dim = n - 1;
    std::vector<Matrix> gens;
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        Matrix s = Matrix::identity(dim);
        s(i, i) = 0;
        s(i + 1, i + 1) = 0;
        s(i, i + 1) = 1;
        s(i + 1, i) = 1;
        gens.push_back(std::move(s));
    }
    // (n-1, n) sends the last basis vector to minus the sum of all of them.
    Matrix last = Matrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r) last(r, dim - 1) = -1;
    gens.push_back(std::move(last));
    ReflectionGroup group(MatrixGroup::close(gens), "sym(" + std::to_string(n) + ")");
    check_order(group, factorial(n));
    return group;
}

ReflectionGroup imprimitive_group(int d, int e, int r) {
    if (d < 1 || e < 1 || r < 1) throw std::invalid_argument("imprimitive(d,e,r) needs positive parameters");
    const long m = static_cast<long>(d) * e;
    long expected = factorial(r);
    for (int i = 0; i < r; ++i) expected *= m;
    expected /= e;
    if (expected > static_cast<long>(MatrixGroup::default_cap()))
        throw std::invalid_argument("imprimitive group order exceeds the closure cap");
    const std::size_t dim = r;
    std::vector<Matrix> gens;
    if (d > 1) {
        Matrix t = Matrix::identity(dim);
        t(0, 0) = Cyclotomic::root_of_unity(m, e);
        gens.push_back(std::move(t));
    }
    if (e > 1 && r >= 2) {
        Matrix s = Matrix::identity(dim);
        s(0, 0) = 0;
        s(1, 1) = 0;
        s(0, 1) = Cyclotomic::root_of_unity(m, -1);
        s(1, 0) = Cyclotomic::root_of_unity(m, 1);
        gens.push_back(std::move(s));
    }
    for (std::size_t i = 0; i + 1 < dim; ++i) {
        Matrix s = Matrix::identity(dim);
        s(i, i) = 0;
        s(i + 1, i + 1) = 0;
        s(i, i + 1) = 1;
        s(i + 1, i) = 1;
        gens.push_back(std::move(s));
    }
    if (gens.empty()) gens.push_back(Matrix::identity(dim));
    std::ostringstream name;
    name << "imprimitive(" << d << "," << e << "," << r << ")";
    ReflectionGroup group(MatrixGroup::close(gens), name.str());
    check_order(group, expected);
    return group;
}

ReflectionGroup exceptional_group(const std::string& name) {
    long expected = 0;
    if (name == "g4") expected = 24;
    else if (name == "g5") expected = 72;
    else if (name == "g24") expected = 336;
    else throw std::invalid_argument("unknown exceptional group " + name);
    const GroupSpec spec = load_group_spec(data_directory() + "/" + name + ".json");
    ReflectionGroup group(MatrixGroup::close(spec.generators), name);
    check_order(group, expected);
    return group;
}

ReflectionGroup builtin(const std::string& name, const std::vector<int>& params) {
    auto need = [&](std::size_t count) {
        if (params.size() != count)
            throw std::invalid_argument(name + " expects " + std::to_string(count) + " parameter(s)");
    };
    if (name == "sym") {
        need(1);
        return symmetric_group(params[0]);
    }
    if (name == "imprimitive") {
        need(3);
        return imprimitive_group(params[0], params[1], params[2]);
    }
    if (name == "g4" || name == "g5" || name == "g24") {
        need(0);
        return exceptional_group(name);
    }
    throw std::invalid_argument("unknown builtin group " + name);
}

ReflectionGroup builtin_from_string(const std::string& id) {
    static const std::regex pattern(R"(\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\(\s*([-0-9,\s]*)\))?\s*)");
    std::smatch match;
    if (!std::regex_match(id, match, pattern)) throw std::invalid_argument("cannot parse group identifier " + id);
    std::vector<int> params;
    std::stringstream list(match[2].str());
    for (std::string item; std::getline(list, item, ',');) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        params.push_back(std::stoi(item));
    }
    return builtin(match[1].str(), params);
}

ReflectionGroup group_from_spec(const GroupSpec& spec) {
    return ReflectionGroup(MatrixGroup::close(spec.generators), spec.name);
}

}  // namespace crg
