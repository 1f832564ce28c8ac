from django.utils.translation import gettext_lazy as _

SCHEMA_VERSION = '1.0'

# Ring Kinds
RING_KIND_ZMOD = 'zmod'
RING_KIND_GROUP_RING = 'group_ring'
RING_KIND_PRODUCT = 'product'

RING_KINDS = (
    (RING_KIND_ZMOD, _('Integers modulo m')),
    (RING_KIND_GROUP_RING, _('Group ring')),
    (RING_KIND_PRODUCT, _('Product of rings')),
)

# Ring Homomorphism Kinds
HOM_KIND_CHARACTER = 'character'
HOM_KIND_ABELIANIZATION = 'abelianization'
HOM_KIND_AUGMENTATION = 'augmentation'
HOM_KIND_ZMOD_PROJECTION = 'zmod_projection'
HOM_KIND_CRT_SPLIT = 'crt_split'
HOM_KIND_IDENTITY = 'identity'
HOM_KIND_COMPOSITE = 'composite'

HOM_KINDS = (
    (HOM_KIND_CHARACTER, _('Character')),
    (HOM_KIND_ABELIANIZATION, _('Abelianization')),
    (HOM_KIND_AUGMENTATION, _('Augmentation')),
    (HOM_KIND_ZMOD_PROJECTION, _('Reduction of coefficients')),
    (HOM_KIND_CRT_SPLIT, _('Chinese remainder split')),
    (HOM_KIND_IDENTITY, _('Identity')),
    (HOM_KIND_COMPOSITE, _('Composite')),
)

# Group Builders
GROUP_C2 = 'C2'
GROUP_C3 = 'C3'
GROUP_C4 = 'C4'
GROUP_S3 = 'S3'
GROUP_D4 = 'D4'
GROUP_Q8 = 'Q8'

GROUP_BUILDERS = (
    (GROUP_C2, _('Cyclic group of order 2')),
    (GROUP_C3, _('Cyclic group of order 3')),
    (GROUP_C4, _('Cyclic group of order 4')),
    (GROUP_S3, _('Symmetric group on 3 letters')),
    (GROUP_D4, _('Dihedral group of order 8')),
    (GROUP_Q8, _('Quaternion group')),
)

# Built-in Schemes
SCHEME_A1 = 'A1'
SCHEME_GM = 'Gm'
SCHEME_P1 = 'P1'
SCHEME_POINT = 'point'

BUILTIN_SCHEMES = (
    (SCHEME_A1, _('Affine line')),
    (SCHEME_GM, _('Multiplicative group')),
    (SCHEME_P1, _('Projective line')),
    (SCHEME_POINT, _('Closed point of degree d')),
)

# Covering Kinds
COVERING_TRIVIAL = 'trivial'
COVERING_KUMMER = 'kummer'
COVERING_TABLE = 'table'

COVERING_KINDS = (
    (COVERING_TRIVIAL, _('Trivial covering')),
    (COVERING_KUMMER, _('Kummer covering')),
    (COVERING_TABLE, _('Explicit Frobenius table')),
)

# Representation Builders
REP_TRIVIAL = 'trivial'
REP_CHARACTER = 'character'
REP_REGULAR = 'regular'
REP_GROUP_RING = 'group_ring'
REP_EXPLICIT = 'explicit'
REP_EXTENSION = 'extension'

REP_BUILDERS = (
    (REP_TRIVIAL, _('Constant sheaf')),
    (REP_CHARACTER, _('Character sheaf')),
    (REP_REGULAR, _('Regular representation')),
    (REP_GROUP_RING, _('Group ring sheaf')),
    (REP_EXPLICIT, _('Explicit matrices')),
    (REP_EXTENSION, _('Extension of two sheaves')),
)

# Verdicts
VERDICT_EQUAL_CERTIFIED = 'EqualCertified'
VERDICT_EQUAL_ON_INVARIANTS = 'EqualOnAllInvariants'
VERDICT_DISTINGUISHED = 'Distinguished'

VERDICTS = (
    (VERDICT_EQUAL_CERTIFIED, _('Equal, certified')),
    (VERDICT_EQUAL_ON_INVARIANTS, _('Equal on all invariants')),
    (VERDICT_DISTINGUISHED, _('Distinguished')),
)

# Verification Methods
METHOD_DIM0 = 'dim0'
METHOD_TABLE = 'table'
METHOD_COVERING_ZETA = 'covering-zeta'
METHOD_CHARACTER_PRODUCT = 'character-product'
METHOD_POWER_SUMS = 'power-sums'
METHOD_TRUNCATION = 'truncation'
METHOD_OPEN_CLOSED = 'open-closed'

VERIFICATION_METHODS = (
    (METHOD_DIM0, _('Dimension zero global sections')),
    (METHOD_TABLE, _('Tabulated cohomology')),
    (METHOD_COVERING_ZETA, _('Covering curve zeta function')),
    (METHOD_CHARACTER_PRODUCT, _('Product over characters')),
    (METHOD_POWER_SUMS, _('Power sums')),
    (METHOD_TRUNCATION, _('Truncation coherence')),
    (METHOD_OPEN_CLOSED, _('Open/closed decomposition')),
)

# Commands
COMMAND_ZETA = 'zeta'
COMMAND_LFUN = 'lfun'
COMMAND_VERIFY = 'verify'
COMMAND_K1 = 'k1'
COMMAND_POINTS = 'points'

COMMANDS = (
    (COMMAND_ZETA, _('Zeta function from point counts')),
    (COMMAND_LFUN, _('L-function')),
    (COMMAND_VERIFY, _('Trace formula verification')),
    (COMMAND_K1, _('K1 class of a matrix')),
    (COMMAND_POINTS, _('Point counts and closed points')),
)

# Output Formats
FORMAT_TEXT = 'text'
FORMAT_JSON = 'json'

OUTPUT_FORMATS = (
    (FORMAT_TEXT, _('Text')),
    (FORMAT_JSON, _('JSON')),
)

# Exit Codes
EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_DISTINGUISHED = 2

# K1 Certificate Moves
MOVE_ADDROW = 'addrow'
MOVE_ADDCOL = 'addcol'
MOVE_SWAP = 'swap-as-whitehead'
MOVE_SCALE_PAIR = 'scale-pair'

CERTIFICATE_MOVES = (
    (MOVE_ADDROW, _('Add a left multiple of one row to another')),
    (MOVE_ADDCOL, _('Add a right multiple of one column to another')),
    (MOVE_SWAP, _('Swap two rows, negating one')),
    (MOVE_SCALE_PAIR, _('Scale two columns by a unit and its inverse')),
)

# Jacobson Radical Modes
RADICAL_DEFINITIONAL = 'definitional'
RADICAL_STRUCTURAL = 'structural'

GALLERY_PREFIX = 'gallery:'
BUILTIN_PREFIX = 'builtin:'

# Degree scanned by the points command when --maxdeg is not given
DEFAULT_MAX_DEGREE = 3
