#pragma once

#include "autocomm/error.hpp"
#include "autocomm/rational.hpp"
#include "autocomm/group.hpp"
#include "autocomm/named.hpp"
#include "autocomm/isomorphism.hpp"
#include "autocomm/automorphism.hpp"
#include "autocomm/probability.hpp"
#include "autocomm/verifier.hpp"
#include "autocomm/autoisoclinism.hpp"
#include "autocomm/io.hpp"
#include "autocomm/cli.hpp"
