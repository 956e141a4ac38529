import logging
from pathlib import Path

from skewpbw.models import SmoothnessCertificate

logger = logging.getLogger(__name__)


class CertificateExporter:
    @staticmethod
    def to_text(certificate: SmoothnessCertificate) -> str:
        """Human-readable certificate report"""
        lines = [
            "=" * 80,
            "SMOOTHNESS CERTIFICATE",
            "=" * 80,
            "",
        ]
        if certificate.presentation_name:
            lines.append(f"Presentation:       {certificate.presentation_name}")
        lines += [
            f"Verdict:            {certificate.verdict}",
            f"Degree bound:       {certificate.degree_bound}",
            f"Diamond degree:     {certificate.diamond_degree}",
            f"Trials:             {certificate.trials}",
            f"Seed:               {certificate.rng_seed}",
            f"Calculus dimension: {certificate.calculus_dimension}",
            f"GK dimension:       {certificate.gk_dimension} (assumed)",
        ]
        if certificate.failing_stage:
            lines.append(f"Failing stage:      {certificate.failing_stage}")
        lines += ["", "MATCHED CASES:", "-" * 40]
        lines += [f"• {case}" for case in certificate.matched_cases] or ["• none"]

        lines += ["", "STAGES:", "-" * 40]
        for stage in certificate.stages:
            lines.append(f"[{'PASS' if stage.passed else 'FAIL'}] {stage.name}")
            lines += [f"    {detail}" for detail in stage.details]

        lines += ["", "ASSUMPTIONS:", "-" * 40]
        lines += [f"• {assumption}" for assumption in certificate.assumptions]
        if certificate.metadata:
            lines += ["", "NOTES:", "-" * 40]
            lines += [f"• {key}: {value}" for key, value in certificate.metadata.items()]
        return "\n".join(lines) + "\n"

    @staticmethod
    def to_json(certificate: SmoothnessCertificate) -> str:
        return certificate.model_dump_json(by_alias=True, indent=2)

    @staticmethod
    def export_to_txt(certificate: SmoothnessCertificate, output_path: Path):
        """Export certificate to TXT"""
        try:
            Path(output_path).write_text(CertificateExporter.to_text(certificate), encoding="utf-8")
            logger.info(f"TXT exported to {output_path}")
        except OSError as e:
            logger.error(f"Error exporting to TXT: {e}")
            raise

    @staticmethod
    def export_to_json(certificate: SmoothnessCertificate, output_path: Path):
        """Export certificate to JSON"""
        try:
            Path(output_path).write_text(CertificateExporter.to_json(certificate) + "\n", encoding="utf-8")
            logger.info(f"JSON exported to {output_path}")
        except OSError as e:
            logger.error(f"Error exporting to JSON: {e}")
            raise
