#pragma once

#include <string>
#include <vector>

#include "semilin/algnum.hpp"

namespace semilin {

using Vector = std::vector<ComplexAlgebraic>;

class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
    Matrix(std::initializer_list<std::initializer_list<ComplexAlgebraic>> rows);
    static Matrix identity(int n);
    static Matrix diagonal(const Vector& d);
    static Matrix from_rows(const std::vector<Vector>& rows);

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool square() const { return r_ == c_; }
    ComplexAlgebraic& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const ComplexAlgebraic& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vector row(int i) const;
    Vector col(int j) const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Matrix& m);
    Matrix transpose() const;
    Matrix conj() const;
    bool is_zero() const;
    bool is_real() const;
    bool is_rational() const;

    Matrix operator-() const;
    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(const ComplexAlgebraic& s);

private:
    int r_ = 0, c_ = 0;
    std::vector<ComplexAlgebraic> a_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Matrix a, const ComplexAlgebraic& s);
Vector operator*(const Matrix& a, const Vector& v);
bool operator==(const Matrix& a, const Matrix& b);
bool operator!=(const Matrix& a, const Matrix& b);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector scale(const Vector& a, const ComplexAlgebraic& s);
bool is_zero(const Vector& v);

// reduced row echelon form; returns pivot columns
std::vector<int> rref(Matrix& m);
int rank(Matrix m);
// basis of the right kernel
std::vector<Vector> kernel(const Matrix& m);
ComplexAlgebraic det(Matrix m);
// throws std::domain_error if singular
Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix power(const Matrix& a, unsigned long n);

// det(lambda I - A), monic, coefficients low to high
std::vector<ComplexAlgebraic> char_poly(const Matrix& a);

struct JordanBlock {
    ComplexAlgebraic eigenvalue;
    int size = 0;
    int offset = 0;  // first coordinate of the block
};

// Q * A * Qinv = J with J block diagonal, blocks Jord(size, eigenvalue)
// (eigenvalue on the diagonal, ones on the superdiagonal)
struct JordanForm {
    std::vector<JordanBlock> blocks;
    Matrix Q, Qinv;
    Matrix J() const;
};

Matrix jordan_matrix(const std::vector<JordanBlock>& blocks);
Matrix jordan_block(int size, const ComplexAlgebraic& lambda);
JordanForm jordan_form(const Matrix& a);
// block structure of a matrix already in Jordan normal form, or empty if not
std::vector<JordanBlock> jordan_structure(const Matrix& a);

struct OrbitInstance {
    Matrix A;
    Vector x, y;
    int dim() const { return A.rows(); }
    void validate() const;
};

OrbitInstance conjugate_instance(const OrbitInstance& l, const Matrix& Q, const Matrix& Qinv);
Vector apply_power(const Matrix& a, const Vector& x, unsigned long n);

std::string to_string(const Vector& v);
std::string to_string(const Matrix& m);

}  // namespace semilin
