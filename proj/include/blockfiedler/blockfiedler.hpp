#ifndef BLOCKFIEDLER_BLOCKFIEDLER_HPP
#define BLOCKFIEDLER_BLOCKFIEDLER_HPP

#include "blockfiedler/errors.hpp"
#include "blockfiedler/generators.hpp"
#include "blockfiedler/graph.hpp"
#include "blockfiedler/linalg.hpp"
#include "blockfiedler/spectral.hpp"
#include "blockfiedler/structure.hpp"
#include "blockfiedler/verify.hpp"

#endif  // BLOCKFIEDLER_BLOCKFIEDLER_HPP
