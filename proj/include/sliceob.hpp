#pragma once

#include "sliceob/errors.hpp"
#include "sliceob/numbers.hpp"
#include "sliceob/cyclotomic.hpp"
#include "sliceob/matrix.hpp"
#include "sliceob/monomial.hpp"
#include "sliceob/laurent.hpp"
#include "sliceob/normtest.hpp"
#include "sliceob/torsion.hpp"
#include "sliceob/satellite.hpp"
#include "sliceob/io.hpp"
#include "sliceob/report.hpp"
