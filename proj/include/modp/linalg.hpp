#pragma once
#include <cstdint>
#include <optional>
#include <vector>

#include "modp/field.hpp"

namespace modp {

using Vec = std::vector<int>;

// dense matrix of field codes, row-major
struct Mat {
    const FieldCtx *F = nullptr;
    int rows = 0, cols = 0;
    std::vector<int> a;

    Mat() = default;
    Mat(const FieldCtx &f, int r, int c) : F(&f), rows(r), cols(c), a((size_t)r * c, 0) {}
    int &at(int i, int j) { return a[(size_t)i * cols + j]; }
    int at(int i, int j) const { return a[(size_t)i * cols + j]; }
    bool operator==(const Mat &o) const
    {
        return rows == o.rows && cols == o.cols && a == o.a;
    }
};

Mat identity(const FieldCtx &F, int n);
Mat mat_mul(const Mat &A, const Mat &B);
Mat mat_add(const Mat &A, const Mat &B);
Mat mat_sub(const Mat &A, const Mat &B);
Mat mat_scale(int c, const Mat &A);
Mat mat_pow(const Mat &A, long long e); // e >= 0
Mat transpose(const Mat &A);
Vec mat_vec(const Mat &A, const Vec &v); // A acting on a column vector
Vec vec_mat(const Vec &v, const Mat &A); // row vector acted on from the right
Vec vec_add(const FieldCtx &F, const Vec &a, const Vec &b);
Vec vec_sub(const FieldCtx &F, const Vec &a, const Vec &b);
Vec vec_scale(const FieldCtx &F, int c, const Vec &a);
bool is_zero_vec(const Vec &v);
bool is_zero_mat(const Mat &A);
Mat from_rows(const FieldCtx &F, int cols, const std::vector<Vec> &rows);

struct RrefResult {
    Mat R; // reduced row echelon form
    int rank = 0;
    Mat T; // invertible, T * M = R
    std::vector<int> pivots;
};
RrefResult rref(const Mat &M);

// one solution of M x = b, free variables set to zero
std::optional<Vec> solve(const Mat &M, const Vec &b);
// rows span {x : M x = 0}
Mat kernel(const Mat &M);
std::optional<Mat> inverse(const Mat &M);
int mat_rank(const Mat &M);

// subspace of F^ambient in canonical form: basis rows are RREF with no zero rows
struct Subspace {
    const FieldCtx *F = nullptr;
    int ambient = 0;
    Mat basis;
    int dim() const { return basis.rows; }
};

Subspace span_rows(const Mat &rows);
Subspace span_vectors(const FieldCtx &F, int ambient, const std::vector<Vec> &vs);
Subspace sub_sum(const Subspace &A, const Subspace &B);
Subspace sub_intersect(const Subspace &A, const Subspace &B);
bool sub_contains_vector(const Subspace &A, const Vec &v);
bool sub_equals(const Subspace &A, const Subspace &B);
bool sub_contains(const Subspace &A, const Subspace &B); // B subset of A
// coordinates of v in the basis rows, if v lies in the span
std::optional<Vec> coordinates_in(const Mat &basis_rows, const Vec &v);

// incremental echelon basis; remembers the originally added vectors and can
// express members in terms of them
struct SpinBasis {
    const FieldCtx *F = nullptr;
    int ambient = 0;
    std::vector<Vec> orig;
    std::vector<Vec> ech;   // echelon rows, pivot-normalized
    std::vector<Vec> coord; // ech[k] = sum_j coord[k][j] * orig[j]
    std::vector<int> piv;

    SpinBasis() = default;
    SpinBasis(const FieldCtx &f, int amb) : F(&f), ambient(amb) {}
    int dim() const { return (int)ech.size(); }
    bool add(const Vec &v); // true if v was independent
    bool contains(const Vec &v) const;
    std::optional<Vec> coords_of(const Vec &v) const; // in terms of orig
};

struct HomSpace {
    std::vector<Mat> basis; // dimB x dimA matrices, Phi A_i = B_i Phi
    bool is_isomorphic = false;
    Mat witness; // invertible element when is_isomorphic
};
// intertwiner space between two matrix tuples indexed consistently.
// invertibility certified by rank; search order: basis elements, pairwise
// sums, seeded random combinations, exhaustive projective enumeration when
// the hom space has dimension <= 3.
HomSpace hom_space(const std::vector<Mat> &gensA, const std::vector<Mat> &gensB,
                   uint64_t seed = 1);

}
