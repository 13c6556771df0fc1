#include "birk/matgroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "birk/error.hpp"

namespace birk {

namespace {

struct MatLess {
    bool operator()(const Mat& a, const Mat& b) const { return compare(a, b) < 0; }
};

Mat perm_matrix(int dim, const std::vector<int>& image) {
    Mat m(dim, dim);
    for (int j = 0; j < dim; ++j)
        m.at(image[j], j) = QuadExt(1);
    return m;
}

Rational frac(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace

int MatGroup::element_index(const Mat& m) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), m, MatLess{});
    if (it == elements.end() || !(*it == m))
        return -1;
    return static_cast<int>(it - elements.begin());
}

bool MatGroup::closed_under_transpose() const {
    for (const Mat& m : elements)
        if (element_index(m.transposed()) < 0)
            return false;
    return true;
}

bool MatGroup::is_abelian() const {
    for (size_t i = 0; i < generators.size(); ++i)
        for (size_t j = i + 1; j < generators.size(); ++j)
            if (!(generators[i] * generators[j] == generators[j] * generators[i]))
                return false;
    return true;
}

std::vector<int> MatGroup::center_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < elements.size(); ++i) {
        bool central = true;
        for (const Mat& g : generators) {
            if (!(elements[i] * g == g * elements[i])) {
                central = false;
                break;
            }
        }
        if (central)
            out.push_back(static_cast<int>(i));
    }
    return out;
}

bool MatGroup::uses_quad_part() const {
    for (const Mat& m : elements)
        for (const QuadExt& x : m.a)
            if (!x.is_rational())
                return true;
    return false;
}

MatGroup generate_group(int dim, std::vector<Mat> generators, size_t element_cap) {
    for (const Mat& g : generators) {
        if (g.rows != dim || g.cols != dim)
            throw UsageError("generator dimension mismatch");
        if (rank(g) != dim)
            throw UsageError("generator matrix is singular");
    }

    std::map<Mat, int, MatLess> seen;
    std::vector<const Mat*> queue;
    Mat id = Mat::identity(dim);
    auto [it0, fresh0] = seen.emplace(id, 0);
    queue.push_back(&it0->first);
    for (size_t head = 0; head < queue.size(); ++head) {
        const Mat& cur = *queue[head]; // map keys are node-stable
        for (const Mat& g : generators) {
            Mat prod = cur * g;
            auto [it, fresh] = seen.emplace(std::move(prod), 0);
            if (fresh) {
                if (seen.size() > element_cap)
                    throw ResourceCapError("group closure exceeded element cap of " +
                                           std::to_string(element_cap));
                queue.push_back(&it->first);
            }
        }
    }

    MatGroup g;
    g.dim = dim;
    g.generators = std::move(generators);
    g.elements.reserve(seen.size());
    for (const auto& [m, unused] : seen)
        g.elements.push_back(m);
    return g;
}

namespace {

MatGroup coxeter_a(int n) {
    // All permutation matrices of dim n+1.
    const int dim = n + 1;
    std::vector<Mat> gens;
    if (n >= 1) {
        std::vector<int> swap01(dim);
        for (int i = 0; i < dim; ++i)
            swap01[i] = i;
        std::swap(swap01[0], swap01[1]);
        gens.push_back(perm_matrix(dim, swap01));
        std::vector<int> cycle(dim);
        for (int i = 0; i < dim; ++i)
            cycle[i] = (i + 1) % dim;
        gens.push_back(perm_matrix(dim, cycle));
    }
    return generate_group(dim, std::move(gens));
}

MatGroup coxeter_b(int n) {
    // Signed permutation matrices of dim n.
    std::vector<Mat> gens;
    Mat flip = Mat::identity(n);
    flip.at(n - 1, n - 1) = QuadExt(-1);
    gens.push_back(flip);
    if (n >= 2) {
        std::vector<int> swap01(n);
        for (int i = 0; i < n; ++i)
            swap01[i] = i;
        std::swap(swap01[0], swap01[1]);
        gens.push_back(perm_matrix(n, swap01));
        std::vector<int> cycle(n);
        for (int i = 0; i < n; ++i)
            cycle[i] = (i + 1) % n;
        gens.push_back(perm_matrix(n, cycle));
    }
    return generate_group(n, std::move(gens));
}

MatGroup coxeter_d(int n) {
    // Even-signed permutation matrices of dim n.
    std::vector<Mat> gens;
    std::vector<int> swap01(n);
    for (int i = 0; i < n; ++i)
        swap01[i] = i;
    std::swap(swap01[0], swap01[1]);
    gens.push_back(perm_matrix(n, swap01));
    std::vector<int> cycle(n);
    for (int i = 0; i < n; ++i)
        cycle[i] = (i + 1) % n;
    gens.push_back(perm_matrix(n, cycle));
    Mat r = Mat::identity(n); // reflection in e_{n-2} + e_{n-1}
    r.at(n - 2, n - 2) = QuadExt(0);
    r.at(n - 1, n - 1) = QuadExt(0);
    r.at(n - 2, n - 1) = QuadExt(-1);
    r.at(n - 1, n - 2) = QuadExt(-1);
    gens.push_back(r);
    return generate_group(n, std::move(gens));
}

MatGroup coxeter_f4() {
    Mat g1(4, 4), g2(4, 4);
    const int m1[4][4] = {{1, -1, 1, 1}, {-1, -1, -1, 1}, {1, 1, -1, 1}, {1, -1, -1, -1}};
    const int m2[4][4] = {{-1, 1, -1, -1}, {1, -1, -1, -1}, {-1, -1, 1, -1}, {1, 1, 1, -1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            g1.at(i, j) = QuadExt(frac(m1[i][j], 2));
            g2.at(i, j) = QuadExt(frac(m2[i][j], 2));
        }
    return generate_group(4, {g1, g2});
}

MatGroup coxeter_h4() {
    Mat g1(4, 4), g2(4, 4);
    const int rat[4][4] = {{1, -2, -1, 0}, {2, 2, -2, 2}, {1, -2, 0, 1}, {0, -2, -1, 1}};
    const int quad[4][4] = {{1, 0, 1, 0}, {0, 0, 0, 0}, {-1, 0, 0, 1}, {0, 0, -1, -1}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g1.at(i, j) = QuadExt(frac(rat[i][j], 4), frac(quad[i][j], 4));
    const int m2[4][4] = {{-1, 0, 0, 0}, {0, 0, 0, -1}, {0, -1, 0, 0}, {0, 0, 1, 0}};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            g2.at(i, j) = QuadExt(m2[i][j]);
    return generate_group(4, {g1, g2});
}

MatGroup coxeter_h3() {
    // Reflections in three icosahedral roots: (1,0,0), -(tau, 1/tau, 1)/2
    // and (0,0,1), with tau the golden ratio. All three are unit vectors, so
    // R = I - 2 v v^T is orthogonal and the group is transpose-closed.
    const QuadExt half_tau(frac(1, 4), frac(1, 4));      // (1+sqrt5)/4
    const QuadExt half_inv_tau(frac(-1, 4), frac(1, 4)); // (-1+sqrt5)/4
    Vec a1 = {QuadExt(1), QuadExt(0), QuadExt(0)};
    Vec a2 = {-half_tau, -half_inv_tau, QuadExt(frac(-1, 2))};
    Vec a3 = {QuadExt(0), QuadExt(0), QuadExt(1)};
    auto reflection = [](const Vec& v) {
        Mat r = Mat::identity(3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r.at(i, j) -= QuadExt(2) * v[i] * v[j];
        return r;
    };
    return generate_group(3, {reflection(a1), reflection(a2), reflection(a3)});
}

MatGroup coxeter_i2(int n) {
    // Planar dihedral groups whose reflection representation lives in the
    // field: geometric generators over Q(cos pi/n) for n = 2,3,5, the integer
    // orthogonal representation for n = 4, and the doubling {s1, -s2} for
    // n = 6, 10 (order-2n dihedral as {+-1} x I2(n/2)).
    auto tits_pair = [](const QuadExt& two_cos) {
        Mat s1 = Mat::from_rows({{QuadExt(-1), two_cos}, {QuadExt(0), QuadExt(1)}});
        Mat s2 = Mat::from_rows({{QuadExt(1), QuadExt(0)}, {two_cos, QuadExt(-1)}});
        return std::pair<Mat, Mat>(s1, s2);
    };
    const QuadExt tau(frac(1, 2), frac(1, 2)); // 2 cos(pi/5)
    switch (n) {
    case 2: {
        Mat s1 = Mat::from_rows({{QuadExt(-1), QuadExt(0)}, {QuadExt(0), QuadExt(1)}});
        Mat s2 = Mat::from_rows({{QuadExt(1), QuadExt(0)}, {QuadExt(0), QuadExt(-1)}});
        return generate_group(2, {s1, s2});
    }
    case 3: {
        auto [s1, s2] = tits_pair(QuadExt(1));
        return generate_group(2, {s1, s2});
    }
    case 4: {
        Mat rot = Mat::from_rows({{QuadExt(0), QuadExt(-1)}, {QuadExt(1), QuadExt(0)}});
        Mat ref = Mat::from_rows({{QuadExt(1), QuadExt(0)}, {QuadExt(0), QuadExt(-1)}});
        return generate_group(2, {rot, ref});
    }
    case 5: {
        auto [s1, s2] = tits_pair(tau);
        return generate_group(2, {s1, s2});
    }
    case 6: {
        auto [s1, s2] = tits_pair(QuadExt(1));
        Mat neg_s2(2, 2);
        for (size_t k = 0; k < s2.a.size(); ++k)
            neg_s2.a[k] = -s2.a[k];
        return generate_group(2, {s1, neg_s2});
    }
    case 10: {
        auto [s1, s2] = tits_pair(tau);
        Mat neg_s2(2, 2);
        for (size_t k = 0; k < s2.a.size(); ++k)
            neg_s2.a[k] = -s2.a[k];
        return generate_group(2, {s1, neg_s2});
    }
    default:
        throw UsageError("I2_" + std::to_string(n) +
                         " is not representable over the field; supported: 2,3,4,5,6,10");
    }
}

int parse_rank(std::string_view digits, std::string_view name) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw UsageError("unknown group name \"" + std::string(name) + "\"");
    int n = 0;
    for (char c : digits) {
        n = n * 10 + (c - '0');
        if (n > 64)
            throw UsageError("group rank too large in \"" + std::string(name) + "\"");
    }
    return n;
}

} // namespace

MatGroup coxeter_group(std::string_view name) {
    if (name.size() < 2)
        throw UsageError("unknown group name \"" + std::string(name) + "\"");
    const char family = name[0];
    std::string_view rest = name.substr(1);
    switch (family) {
    case 'A': {
        int n = parse_rank(rest, name);
        if (n < 1)
            throw UsageError("A_n needs n >= 1");
        return coxeter_a(n);
    }
    case 'B': {
        int n = parse_rank(rest, name);
        if (n < 1)
            throw UsageError("B_n needs n >= 1");
        return coxeter_b(n);
    }
    case 'D': {
        int n = parse_rank(rest, name);
        if (n < 2)
            throw UsageError("D_n needs n >= 2");
        return coxeter_d(n);
    }
    case 'F': {
        if (rest == "4")
            return coxeter_f4();
        throw UsageError("unknown group name \"" + std::string(name) + "\"");
    }
    case 'H': {
        if (rest == "3")
            return coxeter_h3();
        if (rest == "4")
            return coxeter_h4();
        throw UsageError("unknown group name \"" + std::string(name) + "\"");
    }
    case 'I': {
        if (rest.size() > 2 && rest.substr(0, 2) == "2_")
            return coxeter_i2(parse_rank(rest.substr(2), name));
        throw UsageError("unknown group name \"" + std::string(name) + "\" (dihedral groups are I2_<n>)");
    }
    default:
        throw UsageError("unknown group name \"" + std::string(name) + "\"");
    }
}

std::vector<std::string> coxeter_group_names() {
    return {"A<n>", "B<n>", "D<n>", "F4", "H3", "H4", "I2_<n> (n in 2,3,4,5,6,10)"};
}

SymmetryGroup symmetry_action(const MatGroup& g, bool use_transpose, uint64_t seed) {
    const int n = static_cast<int>(g.elements.size());
    if (n == 0)
        throw UsageError("symmetry action of an empty group");

    std::vector<Perm> perms;
    auto lookup = [&](const Mat& m) {
        int idx = g.element_index(m);
        if (idx < 0)
            throw InternalError("group is not closed under multiplication");
        return static_cast<int32_t>(idx);
    };
    for (const Mat& gen : g.generators) {
        Perm left, right;
        left.im.resize(n);
        right.im.resize(n);
        for (int i = 0; i < n; ++i) {
            left.im[i] = lookup(gen * g.elements[i]);
            right.im[i] = lookup(g.elements[i] * gen);
        }
        perms.push_back(std::move(left));
        perms.push_back(std::move(right));
    }
    bool all_symmetric = true;
    if (use_transpose) {
        Perm tr;
        tr.im.resize(n);
        for (int i = 0; i < n; ++i) {
            Mat t = g.elements[i].transposed();
            int idx = g.element_index(t);
            if (idx < 0)
                throw UsageError("transpose flag set but the group is not closed under transpose");
            tr.im[i] = idx;
            if (idx != i)
                all_symmetric = false;
        }
        perms.push_back(std::move(tr));
    }

    const Integer order_g(static_cast<unsigned long>(n));
    const Integer center(static_cast<unsigned long>(g.center_indices().size()));
    Integer abstract_order = order_g * order_g * (use_transpose ? 2 : 1);
    // The left-right kernel is the diagonal over the center; the transpose
    // coset folds into the left-right image only when every element is
    // symmetric (the map x -> x^T is then the identity permutation).
    Integer image_order = order_g * order_g / center;
    if (use_transpose && !all_symmetric)
        image_order *= 2;
    Integer kernel = abstract_order / image_order;

    return SymmetryGroup(std::move(perms), n, std::move(kernel), std::move(image_order), seed);
}

} // namespace birk
