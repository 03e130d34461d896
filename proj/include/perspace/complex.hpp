#pragma once

#include "perspace/grade.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace perspace {

using VertexId = std::int64_t;

class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Simplex {
public:
    Simplex() = default;

    // Sorts the vertex list; throws on repeated vertices.
    explicit Simplex(std::vector<VertexId> vertices) : vertices_(std::move(vertices)) {
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw InputError("simplex with repeated vertex");
        if (vertices_.empty()) throw InputError("simplex without vertices");
    }
    Simplex(std::initializer_list<VertexId> vertices)
        : Simplex(std::vector<VertexId>(vertices)) {}

    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<VertexId>& vertices() const { return vertices_; }

    // The j-th facet drops the j-th vertex; its boundary sign is (-1)^j.
    Simplex facet(std::size_t j) const {
        Simplex f;
        f.vertices_ = vertices_;
        f.vertices_.erase(f.vertices_.begin() + static_cast<std::ptrdiff_t>(j));
        return f;
    }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend bool operator<(const Simplex& a, const Simplex& b) {
        if (a.vertices_.size() != b.vertices_.size())
            return a.vertices_.size() < b.vertices_.size();
        return a.vertices_ < b.vertices_;
    }

private:
    std::vector<VertexId> vertices_;
};

inline std::string to_string(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.vertices().size(); ++i) {
        if (i) out += ',';
        out += std::to_string(s.vertices()[i]);
    }
    return out + "}";
}

// Per-axis sorted distinct grade values.
struct CoordinateGrid {
    std::vector<std::vector<Rational>> axes;
    Rational delta_min = 1;  // sentinel 1 when no axis has two values
    Rational max_value = 0;  // largest value over all axes

    std::size_t parameter_count() const { return axes.size(); }

    // Number of grid values on `axis` that are <= c.
    std::size_t count_at_or_below(std::size_t axis, const Rational& c) const {
        const auto& g = axes[axis];
        return static_cast<std::size_t>(std::upper_bound(g.begin(), g.end(), c) - g.begin());
    }

    bool on_grid(std::size_t axis, const Rational& c) const {
        const auto& g = axes[axis];
        return std::binary_search(g.begin(), g.end(), c);
    }

    Rational min_value() const {
        std::optional<Rational> m;
        for (const auto& g : axes)
            if (!g.empty() && (!m || g.front() < *m)) m = g.front();
        return m.value_or(Rational(0));
    }
};

// Finite simplicial complex with one grade in R^n per simplex. Immutable once built.
// Construction does not validate; see validate() and make_complex().
class MultiFilteredComplex {
public:
    MultiFilteredComplex() : MultiFilteredComplex(1, {}, {}) {}

    MultiFilteredComplex(std::size_t n, std::vector<Simplex> simplices, std::vector<Grade> grades)
        : n_(n), simplices_(std::move(simplices)), grades_(std::move(grades)) {
        if (n_ == 0) throw InputError("parameter count must be at least 1");
        if (simplices_.size() != grades_.size())
            throw InputError("simplex and grade counts differ");
        for (std::size_t i = 0; i < grades_.size(); ++i) {
            if (grades_[i].size() != n_)
                throw DimensionMismatch("grade of simplex " + to_string(simplices_[i]) +
                                        " has length " + std::to_string(grades_[i].size()) +
                                        ", expected " + std::to_string(n_));
        }
        build_indices();
        build_grid();
    }

    std::size_t parameter_count() const { return n_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const Simplex& simplex(std::size_t i) const { return simplices_[i]; }
    const Grade& grade(std::size_t i) const { return grades_[i]; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<Grade>& grades() const { return grades_; }

    // Largest simplex dimension; -1 for the empty complex.
    int dimension() const { return dimension_; }

    std::optional<std::size_t> index_of(const Simplex& s) const {
        auto it = index_.find(s);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Index of each facet of simplex i, in facet order; nullopt where missing.
    const std::vector<std::optional<std::size_t>>& facets(std::size_t i) const { return facets_[i]; }

    const CoordinateGrid& grid() const { return grid_; }

    // Position of grade(i)[axis] within grid().axes[axis].
    std::size_t grid_position(std::size_t i, std::size_t axis) const {
        return positions_[i * n_ + axis];
    }

private:
    void build_indices() {
        dimension_ = -1;
        for (std::size_t i = 0; i < simplices_.size(); ++i) {
            index_.emplace(simplices_[i], i);  // first occurrence wins on duplicates
            dimension_ = std::max(dimension_, simplices_[i].dimension());
        }
        facets_.resize(simplices_.size());
        for (std::size_t i = 0; i < simplices_.size(); ++i) {
            const auto& s = simplices_[i];
            if (s.dimension() == 0) continue;
            for (std::size_t j = 0; j < s.vertices().size(); ++j)
                facets_[i].push_back(index_of(s.facet(j)));
        }
    }

    void build_grid() {
        grid_.axes.assign(n_, {});
        for (const auto& g : grades_)
            for (std::size_t a = 0; a < n_; ++a) grid_.axes[a].push_back(g[a]);
        std::optional<Rational> delta, top;
        for (auto& axis : grid_.axes) {
            std::sort(axis.begin(), axis.end());
            axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
            for (std::size_t j = 1; j < axis.size(); ++j) {
                Rational gap = axis[j] - axis[j - 1];
                if (!delta || gap < *delta) delta = gap;
            }
            if (!axis.empty() && (!top || axis.back() > *top)) top = axis.back();
        }
        grid_.delta_min = delta.value_or(Rational(1));
        grid_.max_value = top.value_or(Rational(0));

        positions_.resize(simplices_.size() * n_);
        for (std::size_t i = 0; i < grades_.size(); ++i)
            for (std::size_t a = 0; a < n_; ++a) {
                const auto& axis = grid_.axes[a];
                positions_[i * n_ + a] = static_cast<std::size_t>(
                    std::lower_bound(axis.begin(), axis.end(), grades_[i][a]) - axis.begin());
            }
    }

    std::size_t n_;
    std::vector<Simplex> simplices_;
    std::vector<Grade> grades_;
    int dimension_ = -1;
    std::map<Simplex, std::size_t> index_;
    std::vector<std::vector<std::optional<std::size_t>>> facets_;
    CoordinateGrid grid_;
    std::vector<std::size_t> positions_;
};

struct ValidationIssue {
    enum class Kind { MissingFace, NonMonotoneGrade, DuplicateSimplex };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }

    std::size_t count(ValidationIssue::Kind kind) const {
        return static_cast<std::size_t>(std::count_if(
            issues.begin(), issues.end(), [&](const auto& i) { return i.kind == kind; }));
    }

    std::string summary() const {
        std::string out;
        for (const auto& i : issues) out += i.message + "\n";
        return out;
    }
};

inline ValidationReport validate(const MultiFilteredComplex& complex) {
    ValidationReport report;
    using Kind = ValidationIssue::Kind;
    for (std::size_t i = 0; i < complex.size(); ++i) {
        const auto& s = complex.simplex(i);
        if (complex.index_of(s) != i) {
            report.issues.push_back({Kind::DuplicateSimplex,
                                     "duplicate simplex " + to_string(s)});
            continue;
        }
        const auto& facets = complex.facets(i);
        for (std::size_t j = 0; j < facets.size(); ++j) {
            if (!facets[j]) {
                report.issues.push_back({Kind::MissingFace, "face " + to_string(s.facet(j)) +
                                                                " of " + to_string(s) + " is missing"});
                continue;
            }
            const auto& face_grade = complex.grade(*facets[j]);
            if (!weakly_below(face_grade, complex.grade(i))) {
                report.issues.push_back(
                    {Kind::NonMonotoneGrade,
                     "face " + to_string(complex.simplex(*facets[j])) + " graded " +
                         to_string(face_grade) + " is not below " + to_string(s) + " graded " +
                         to_string(complex.grade(i))});
            }
        }
    }
    return report;
}

// Builds a complex and rejects it unless validate() is clean.
inline MultiFilteredComplex make_complex(std::size_t n, std::vector<Simplex> simplices,
                                         std::vector<Grade> grades) {
    MultiFilteredComplex complex(n, std::move(simplices), std::move(grades));
    auto report = validate(complex);
    if (!report.ok()) throw InputError("invalid complex:\n" + report.summary());
    return complex;
}

// Grades every simplex by the componentwise max over its vertices. Every graded
// vertex becomes a 0-simplex.
inline MultiFilteredComplex lower_star_extend(const std::map<VertexId, Grade>& vertex_grades,
                                              const std::vector<Simplex>& simplices,
                                              std::optional<std::size_t> n = std::nullopt) {
    std::size_t params = n.value_or(vertex_grades.empty() ? 1 : vertex_grades.begin()->second.size());
    std::vector<Simplex> out_simplices;
    std::vector<Grade> out_grades;
    for (const auto& [id, g] : vertex_grades) {
        if (g.size() != params)
            throw InputError("vertex " + std::to_string(id) + " grade has length " +
                             std::to_string(g.size()) + ", expected " + std::to_string(params));
        out_simplices.push_back(Simplex{id});
        out_grades.push_back(g);
    }
    for (const auto& s : simplices) {
        if (s.dimension() == 0 && vertex_grades.contains(s.vertices()[0])) continue;
        std::optional<Grade> g;
        for (VertexId v : s.vertices()) {
            auto it = vertex_grades.find(v);
            if (it == vertex_grades.end())
                throw InputError("vertex " + std::to_string(v) + " of " + to_string(s) +
                                 " has no grade");
            g = g ? componentwise_max(*g, it->second) : it->second;
        }
        out_simplices.push_back(s);
        out_grades.push_back(*g);
    }
    return MultiFilteredComplex(params, std::move(out_simplices), std::move(out_grades));
}

// Membership mask over the simplices of a parent complex.
struct SubcomplexSelection {
    std::vector<bool> mask;

    bool contains(std::size_t i) const { return mask[i]; }
    std::size_t count() const { return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)); }

    bool subset_of(const SubcomplexSelection& other) const {
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (mask[i] && !other.mask[i]) return false;
        return true;
    }

    friend bool operator==(const SubcomplexSelection&, const SubcomplexSelection&) = default;
};

inline SubcomplexSelection full_selection(const MultiFilteredComplex& complex) {
    return {std::vector<bool>(complex.size(), true)};
}

inline bool is_face_closed(const MultiFilteredComplex& complex, const SubcomplexSelection& sel) {
    for (std::size_t i = 0; i < complex.size(); ++i) {
        if (!sel.mask[i]) continue;
        for (const auto& f : complex.facets(i))
            if (!f || !sel.mask[*f]) return false;
    }
    return true;
}

// Simplices with grade ⪯ u.
inline SubcomplexSelection sublevel(const MultiFilteredComplex& complex, const Grade& u) {
    if (u.size() != complex.parameter_count())
        throw DimensionMismatch("sublevel grade has length " + std::to_string(u.size()) +
                                ", complex has " + std::to_string(complex.parameter_count()) +
                                " parameters");
    SubcomplexSelection sel{std::vector<bool>(complex.size(), false)};
    for (std::size_t i = 0; i < complex.size(); ++i) sel.mask[i] = weakly_below(complex.grade(i), u);
    return sel;
}

inline CoordinateGrid coordinate_grid(const MultiFilteredComplex& complex) { return complex.grid(); }

} // namespace perspace
