#include "rdcds/cauchy.hpp"

#include <unordered_set>

#include "rdcds/errors.hpp"

namespace rdcds {

EvalPoints canonical_eval_points(std::size_t n, const PrimeField& field) {
    const std::uint64_t q = field.modulus();
    EvalPoints pts;
    pts.xs.reserve(n);
    pts.fs.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        pts.xs.push_back(static_cast<Symbol>(i % q));
        pts.fs.push_back(static_cast<Symbol>((n + i) % q));
    }
    validate_eval_points(pts, field);
    return pts;
}

void validate_eval_points(const EvalPoints& pts, const PrimeField& field) {
    if (pts.xs.size() != pts.fs.size()) {
        throw DegeneratePoints("point lists must have equal length");
    }
    std::unordered_set<Symbol> seen;
    auto check = [&](Symbol v) {
        if (v >= field.modulus()) {
            throw DegeneratePoints("evaluation point not reduced mod q");
        }
        if (!seen.insert(v).second) {
            throw DegeneratePoints("evaluation points must be pairwise distinct");
        }
    };
    for (Symbol v : pts.xs) check(v);
    for (Symbol v : pts.fs) check(v);
}

FieldMatrix cauchy_matrix(const EvalPoints& pts, const PrimeField& field) {
    validate_eval_points(pts, field);
    const std::size_t n = pts.xs.size();
    FieldMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = field.inv(field.sub(pts.xs[i], pts.fs[j]));
        }
    }
    return m;
}

} // namespace rdcds
