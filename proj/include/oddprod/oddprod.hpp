#ifndef ODDPROD_ODDPROD_HPP
#define ODDPROD_ODDPROD_HPP

#include "colouring.hpp"
#include "host.hpp"
#include "io.hpp"
#include "product.hpp"
#include "report.hpp"
#include "verify.hpp"

#endif
