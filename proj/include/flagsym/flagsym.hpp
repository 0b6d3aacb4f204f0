#ifndef FLAGSYM_FLAGSYM_HPP
#define FLAGSYM_FLAGSYM_HPP

#include "flagsym/chart.hpp"
#include "flagsym/classcode.hpp"
#include "flagsym/expr.hpp"
#include "flagsym/frame.hpp"
#include "flagsym/io.hpp"
#include "flagsym/linalg.hpp"
#include "flagsym/linform.hpp"
#include "flagsym/moduli.hpp"
#include "flagsym/pointspec.hpp"
#include "flagsym/rational.hpp"
#include "flagsym/scalar.hpp"
#include "flagsym/symmetry.hpp"
#include "flagsym/vecfield.hpp"

#endif
