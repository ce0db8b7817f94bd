#pragma once

#include "cychom/algebra.hpp"
#include "cychom/presentation.hpp"

#include <memory>
#include <stdexcept>
#include <string>

namespace cychom {

/* Parse failure with a 1-based position into the source text. */
struct ParseError : std::runtime_error {
    int line = 0;
    int col = 0;
    ParseError(int line_, int col_, const std::string& msg)
        : std::runtime_error(std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

/* One parsed presentation file. Exactly one of the two presentation
 * kinds is populated, selected by `kind`. */
struct InputDocument {
    enum Kind { SemiFree, FiniteDim };
    Kind kind = SemiFree;
    SemiFreePresentation semifree;
    FiniteDimPresentation finitedim;

    const std::string& display_name() const {
        return kind == SemiFree ? semifree.name : finitedim.name;
    }
};

/* Line-oriented text format:
 *
 *   # comment
 *   name Q
 *   kind semifree
 *   objects pt
 *   cofibrant yes
 *   x: pt->pt deg=0 wt=1
 *   y: pt->pt deg=1 wt=2 d=x*x
 *
 * Finite-dimensional presentations use `kind finitedim` with
 * `basis e: pt->pt deg=0 wt=1 [identity]`, `mul a*b = expr` and
 * `d a = expr` lines; omitted products and differentials are zero.
 * Differential and product expressions are rational polynomials in
 * generator words, e.g. `x*x - 1/2*y`. */
InputDocument parse_input(const std::string& text);

InputDocument load_input(const std::string& path);

/* Canonical text form; parsing it reproduces the document. Explicit
 * zero products and differentials are normalized away. */
std::string serialize(const InputDocument& doc);

/* The algebra over the document, behind the common interface. */
std::shared_ptr<Algebra> make_algebra(const InputDocument& doc);

} // namespace cychom
