// Small arithmetic expression grammar over x[i], y[i]:
//   +, -, *, /, ^, sqrt, sin, cos, sinh, cosh, exp, log
// Expressions evaluate on any dual depth, so custom metrics get exact
// derivatives like the built-in zoo.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "finsler/dual.hpp"
#include "finsler/errors.hpp"
#include "finsler/smallvec.hpp"

namespace finsler {

class Expr {
  public:
    enum class Op { Const, VarX, VarY, Add, Sub, Mul, Div, Pow, Neg, Sqrt, Sin, Cos, Sinh, Cosh, Exp, Log };

    struct Node {
        Op op;
        double cst = 0.0;
        int index = 0;
        std::unique_ptr<Node> a, b;
    };

    // yvars=false restricts the grammar to x[*] only (radial profiles also
    // accept the bare variable `r`, mapped to x[0]).
    static Expr parse(const std::string& src, int dim, bool allow_y = true, bool allow_r = false);

    template <class S>
    S eval(const Vec<S>& x, const Vec<S>& y) const {
        return eval_node(*root_, x, y);
    }

    const std::string& source() const { return src_; }
    int dim() const { return dim_; }

  private:
    template <class S>
    static S eval_node(const Node& n, const Vec<S>& x, const Vec<S>& y) {
        switch (n.op) {
            case Op::Const: return S(n.cst);
            case Op::VarX: return x[n.index];
            case Op::VarY: return y[n.index];
            case Op::Add: return eval_node(*n.a, x, y) + eval_node(*n.b, x, y);
            case Op::Sub: return eval_node(*n.a, x, y) - eval_node(*n.b, x, y);
            case Op::Mul: return eval_node(*n.a, x, y) * eval_node(*n.b, x, y);
            case Op::Div: return eval_node(*n.a, x, y) / eval_node(*n.b, x, y);
            case Op::Pow:
                if (n.b->op == Op::Const) return pow(eval_node(*n.a, x, y), n.b->cst);
                return pow(eval_node(*n.a, x, y), eval_node(*n.b, x, y));
            case Op::Neg: return -eval_node(*n.a, x, y);
            case Op::Sqrt: return sqrt(eval_node(*n.a, x, y));
            case Op::Sin: return sin(eval_node(*n.a, x, y));
            case Op::Cos: return cos(eval_node(*n.a, x, y));
            case Op::Sinh: return sinh(eval_node(*n.a, x, y));
            case Op::Cosh: return cosh(eval_node(*n.a, x, y));
            case Op::Exp: return exp(eval_node(*n.a, x, y));
            case Op::Log: return log(eval_node(*n.a, x, y));
        }
        return S(0.0);
    }

    std::shared_ptr<const Node> root_;
    std::string src_;
    int dim_ = 0;
};

}  // namespace finsler
