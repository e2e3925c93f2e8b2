#pragma once

#include "abelian_oracle.hpp"
#include "cosimplicial.hpp"
#include "descent.hpp"
#include "errors.hpp"
#include "fixtures.hpp"
#include "functor.hpp"
#include "hom.hpp"
#include "homotopy.hpp"
#include "io.hpp"
#include "nerve.hpp"
#include "partition.hpp"
#include "product.hpp"
#include "report.hpp"
#include "sset.hpp"
#include "tot.hpp"
#include "two_groupoid.hpp"
