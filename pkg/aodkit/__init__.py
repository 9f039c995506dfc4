# -*- coding: utf-8 -*-
"""
aodkit is a Python package for building, checking and evaluating orthogonal
space-time block codes made from amicable orthogonal designs.

The package works in exact arithmetic over the Gaussian integers extended by
powers of √2 (`aodkit.exact`). On top of that it provides:

- verification of amicable families and orthogonal codes (`aodkit.design`);
- two recursive constructions that double or quadruple a family's order
  (`aodkit.constructions`);
- a catalog of eight published codes and the seeds that generate four of
  them (`aodkit.codes`);
- per-antenna power statistics and reproduction of the published power
  tables (`aodkit.power`);
- signed permutation equivalence and block layouts (`aodkit.equivalence`);
- a Rayleigh fading bit error rate simulator (`aodkit.simulator`).

## Quick start

>>> import aodkit as ak
>>> g8 = ak.fixture('G8')
>>> ak.verify_ostbc(g8).passed
True
>>> ak.constructed_fixture('G8') == g8
True

"""

__version__ = '0.1.0'

#imports for package namespace
from .exact import (ExactScalar,
                    ExactMatrix,
                    rotation,)

from .design import (DispersionFamily,
                     VerifyReport,
                     gram_types,
                     verify_af,
                     verify_aod,
                     verify_ostbc,
                     classify,
                     max_variables_bound,)

from .constructions import (MnSeed,
                            construct1,
                            construct2,
                            build_chain,
                            seed_catalog,
                            verify_mn_seed,)

from .codes import (SymbolicCode,
                    assemble,
                    extract_dispersion,
                    find_pairing,
                    fixture,
                    constructed_fixture,
                    rotate_symbol,)

from .power import (get_constellation,
                    power_report,
                    table_report,
                    CONSTELLATION_DICT,)

from .equivalence import (MonomialTransform,
                          apply_transform,
                          extract_blocks,)

from .simulator import (SimConfig,
                        run_ber,)

from .printing import (catalog_tree,
                       provenance_tree,)
