#pragma once

#include "dagrec/graph.hpp"
#include "dagrec/separation.hpp"
#include "dagrec/oracle.hpp"
#include "dagrec/recovery.hpp"
#include "dagrec/extension.hpp"
#include "dagrec/synthesis.hpp"
#include "dagrec/io.hpp"
