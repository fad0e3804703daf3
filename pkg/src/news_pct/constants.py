# Dataset schema
DATASET_COLUMNS = (
    "date",
    "ticker",
    "company",
    "headline",
    "source",
    "open",
    "close",
    "pct_change",
)
DATASET_PROVENANCES = {"real", "synthetic"}
PCT_RECORD_REL_TOL = 1e-9
PCT_FILE_ABS_TOL = 1e-6

# Modality versions
VERSION_IDS = ("v1", "v2", "v3", "v4", "v5", "v6")
TARGET_MODES = {"regression", "symbolic"}
FIELD_DELIMITER = " | "

# Tokenizer
PAD_TOKEN = "[PAD]"
UNK_TOKEN = "[UNK]"
CLS_TOKEN = "[CLS]"
SEP_TOKEN = "[SEP]"
RESERVED_TOKENS = (PAD_TOKEN, UNK_TOKEN, CLS_TOKEN, SEP_TOKEN)
PAD_ID, UNK_ID, CLS_ID, SEP_ID = range(4)
CONTINUATION_PREFIX = "##"
MIN_VOCAB_SIZE = 300
DEFAULT_VOCAB_SIZE = 8000
MAX_CHARS_PER_WORD = 100

# Architectures
ALLOWED_ARCHS = {"bert", "lstm"}
ALLOWED_PRECISIONS = {"float64", "float32"}

# Checkpoints
BERT_CHECKPOINT_MAGIC = b"NFP1"
LSTM_CHECKPOINT_MAGIC = b"NFL1"
CHECKPOINT_FORMAT_VERSION = 1

# Evaluation
WITHIN_TOLERANCES = (2.0, 5.0)
NOT_APPLICABLE = "N/A"
REPORT_FORMATS = {"json", "csv", "svg"}

# Grad checks
FD_STEP = 1e-5
GRAD_CHECK_THRESHOLD = 1e-3
GRAD_CHECK_DENOM_FLOOR = 1e-6
