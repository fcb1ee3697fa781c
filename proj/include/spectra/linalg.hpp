#pragma once
// Dense complex/real matrix helpers: storage, products, Householder QR,
// LU solves and determinants. Row-major, no external dependencies.

#include <complex>
#include <vector>

namespace spectra::linalg {

using cplx = std::complex<double>;

class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    cplx& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }
    cplx* data() { return a_.data(); }
    const cplx* data() const { return a_.data(); }

    static CMatrix identity(int n);
    CMatrix adjoint() const;

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<cplx> a_;
};

CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator+(const CMatrix& a, const CMatrix& b);
CMatrix operator-(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs(const CMatrix& a);

/// Householder QR; returns Q explicitly (rows x rows) and R in place of a copy.
struct QrResult {
    CMatrix q;
    CMatrix r;
};
QrResult householder_qr(const CMatrix& a);

/// PLU factorization of a square complex matrix; solve and determinant.
class CLu {
  public:
    explicit CLu(CMatrix a);
    std::vector<cplx> solve(std::vector<cplx> b) const;
    cplx det() const;
    bool singular() const { return singular_; }

  private:
    CMatrix lu_;
    std::vector<int> piv_;
    int sign_ = 1;
    bool singular_ = false;
};

/// Determinant of a real square matrix via PLU (used for Fredholm determinants).
double det_real(std::vector<double> a, int n);

}  // namespace spectra::linalg
