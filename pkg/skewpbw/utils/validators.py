from pathlib import Path
import logging

from skewpbw.config import ALLOWED_EXTENSIONS, MAX_PRESENTATION_FILE_SIZE

logger = logging.getLogger(__name__)


class PresentationFileValidator:
    ALLOWED_EXTENSIONS = ALLOWED_EXTENSIONS
    MAX_FILE_SIZE = MAX_PRESENTATION_FILE_SIZE

    @staticmethod
    def validate_file(file_path: Path) -> tuple:
        """Validate a presentation document before parsing"""
        if not file_path.exists():
            return False, "Presentation document does not exist"

        if not file_path.is_file():
            return False, "Presentation path is not a regular file"

        if file_path.suffix.lower() not in PresentationFileValidator.ALLOWED_EXTENSIONS:
            return False, (
                f"Presentation documents must be JSON; allowed extensions: "
                f"{sorted(PresentationFileValidator.ALLOWED_EXTENSIONS)}"
            )

        size = file_path.stat().st_size
        if size > PresentationFileValidator.MAX_FILE_SIZE:
            return False, (
                f"Presentation document is {size} bytes; the limit is "
                f"{PresentationFileValidator.MAX_FILE_SIZE} (SPBW_MAX_PRESENTATION_SIZE)"
            )

        return True, "Presentation document is valid"

    @staticmethod
    def validate_output_path(file_path: Path) -> tuple:
        """Check that a certificate can be written to file_path"""
        parent = file_path.parent if str(file_path.parent) else Path(".")
        if not parent.exists():
            return False, f"Certificate directory {parent} does not exist"
        if file_path.exists() and file_path.is_dir():
            return False, "Certificate output path is a directory"
        return True, "Certificate output path is valid"
