"""
Dependency Injection Container for Hexagonal Architecture

This module wires the laboratory's adapters, use cases and application service together.
"""

from typing import Optional

# Ports
from core.ports.inbound.laboratory_service_port import LaboratoryServicePort
from core.ports.outbound.artifact_writer_port import ArtifactWriterPort
from core.ports.outbound.environment_repository_port import EnvironmentRepositoryPort
from core.ports.outbound.plot_writer_port import PlotWriterPort

# Use Cases
from core.use_cases.monte_carlo_cross_check_use_case import MonteCarloCrossCheckUseCase
from core.use_cases.run_diagnostics_use_case import RunDiagnosticsUseCase
from core.use_cases.verify_local_limit_use_case import VerifyLocalLimitUseCase

# Application Services
from application.services.laboratory_application_service import LaboratoryApplicationService

# Adapters
from adapters.outbound.file_artifact_writer_adapter import FileArtifactWriterAdapter
from adapters.outbound.svg_plot_adapter import SvgPlotAdapter
from adapters.outbound.text_environment_repository_adapter import TextEnvironmentRepositoryAdapter


class DependencyContainer:
    """Dependency injection container"""

    def __init__(self):
        self._instances = {}
        self._emit = {"csv": True, "json": True, "svg": True}

    def configure_outputs(self, emit_csv: bool = True, emit_json: bool = True, emit_svg: bool = True) -> None:
        """Select which artifact kinds the writers produce; drops cached instances"""
        self._emit = {"csv": emit_csv, "json": emit_json, "svg": emit_svg}
        self._instances.clear()

    def get_environment_repository_adapter(self) -> EnvironmentRepositoryPort:
        """Get environment repository adapter instance"""
        if 'environment_repository' not in self._instances:
            self._instances['environment_repository'] = TextEnvironmentRepositoryAdapter()
        return self._instances['environment_repository']

    def get_artifact_writer_adapter(self) -> ArtifactWriterPort:
        """Get artifact writer adapter instance"""
        if 'artifact_writer' not in self._instances:
            self._instances['artifact_writer'] = FileArtifactWriterAdapter(
                emit_csv=self._emit["csv"], emit_json=self._emit["json"]
            )
        return self._instances['artifact_writer']

    def get_plot_writer_adapter(self) -> PlotWriterPort:
        """Get SVG plot writer instance"""
        if 'plot_writer' not in self._instances:
            self._instances['plot_writer'] = SvgPlotAdapter(enabled=self._emit["svg"])
        return self._instances['plot_writer']

    def get_run_diagnostics_use_case(self) -> RunDiagnosticsUseCase:
        """Get run diagnostics use case instance"""
        if 'run_diagnostics_use_case' not in self._instances:
            self._instances['run_diagnostics_use_case'] = RunDiagnosticsUseCase(
                artifact_writer=self.get_artifact_writer_adapter()
            )
        return self._instances['run_diagnostics_use_case']

    def get_verify_local_limit_use_case(self) -> VerifyLocalLimitUseCase:
        """Get local limit verification use case instance"""
        if 'verify_local_limit_use_case' not in self._instances:
            self._instances['verify_local_limit_use_case'] = VerifyLocalLimitUseCase(
                artifact_writer=self.get_artifact_writer_adapter(),
                plot_writer=self.get_plot_writer_adapter(),
            )
        return self._instances['verify_local_limit_use_case']

    def get_monte_carlo_use_case(self) -> MonteCarloCrossCheckUseCase:
        """Get Monte Carlo cross-check use case instance"""
        if 'monte_carlo_use_case' not in self._instances:
            self._instances['monte_carlo_use_case'] = MonteCarloCrossCheckUseCase(
                artifact_writer=self.get_artifact_writer_adapter()
            )
        return self._instances['monte_carlo_use_case']

    def get_laboratory_service(self) -> LaboratoryServicePort:
        """Get laboratory application service instance"""
        if 'laboratory_service' not in self._instances:
            self._instances['laboratory_service'] = LaboratoryApplicationService(
                environment_repository=self.get_environment_repository_adapter(),
                artifact_writer=self.get_artifact_writer_adapter(),
                run_diagnostics_use_case=self.get_run_diagnostics_use_case(),
                verify_local_limit_use_case=self.get_verify_local_limit_use_case(),
                monte_carlo_use_case=self.get_monte_carlo_use_case(),
            )
        return self._instances['laboratory_service']

    def reset(self) -> None:
        """Drop cached instances (useful for testing)"""
        self._instances.clear()


# Global container instance
_container: Optional[DependencyContainer] = None


def get_container() -> DependencyContainer:
    """Get the global dependency container"""
    global _container
    if _container is None:
        _container = DependencyContainer()
    return _container


def reset_container() -> None:
    """Reset the global container (useful for testing)"""
    global _container
    _container = None
