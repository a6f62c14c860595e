"""Classification tables, growth fields, isogenies and the dataset verifier."""

from .aux_curves import AUX_CURVES, aux_curve_search
from .discriminants import discriminant_class, nine_isogeny_family, nine_isogeny_family_disc, square_class
from .growth import GrowthEntry, GrowthRecord, classify_growth_pair, growth_fields
from .isogeny import IsogenyReport, IsogenyUndetermined, rational_isogeny, two_independent_3_isogenies
from .tables import EXCLUDED_MULTISETS, H3_OF, PHI1, PHI3, PHI3_OF, TABLE1, Table1Row, check_table_integrity
from .verify import verify_dataset, verify_table1
