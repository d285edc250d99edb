// SPDX-License-Identifier: Apache-2.0
#ifndef MDLAWSON_MDLAWSON_HPP
#define MDLAWSON_MDLAWSON_HPP

#include "mdlawson/approximant.hpp"
#include "mdlawson/arnoldi.hpp"
#include "mdlawson/demo.hpp"
#include "mdlawson/documents.hpp"
#include "mdlawson/dual.hpp"
#include "mdlawson/error.hpp"
#include "mdlawson/lawson.hpp"
#include "mdlawson/model.hpp"
#include "mdlawson/oracle.hpp"
#include "mdlawson/serialize.hpp"

#endif  // MDLAWSON_MDLAWSON_HPP
