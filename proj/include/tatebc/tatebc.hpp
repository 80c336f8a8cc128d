#pragma once

#include "tatebc/arith.hpp"
#include "tatebc/bc.hpp"
#include "tatebc/chars.hpp"
#include "tatebc/cyclotomic.hpp"
#include "tatebc/error.hpp"
#include "tatebc/fields.hpp"
#include "tatebc/gl.hpp"
#include "tatebc/model.hpp"
#include "tatebc/modl.hpp"
#include "tatebc/modl_field.hpp"
#include "tatebc/parallel.hpp"
#include "tatebc/pipeline.hpp"
#include "tatebc/poly.hpp"
#include "tatebc/tate.hpp"
