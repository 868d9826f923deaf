#pragma once

#include "common.hpp"
#include "scalar_rings.hpp"
#include "polynomial.hpp"
#include "tower.hpp"
#include "quotient.hpp"
#include "matrix.hpp"
#include "smith.hpp"
#include "module.hpp"
#include "complex.hpp"
#include "decalage.hpp"
#include "diagonal.hpp"
#include "witt.hpp"
#include "qtorus.hpp"
#include "fvproc.hpp"
#include "corpus.hpp"
#include "parallel.hpp"
#include "io.hpp"
#include "report.hpp"
#include "suites.hpp"
