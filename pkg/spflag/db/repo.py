"""
Репозиторий для работы с журналом проверок
"""
import json
import uuid
from typing import List, Optional
from sqlalchemy.orm import Session
from sqlalchemy import desc

from .models import VerificationRun, CheckRecord, create_engine_and_session, init_database
from ..config import RunConfig
from ..core.suites.base import SuiteReport


class RunRepository:
    """Репозиторий для работы с запусками наборов"""

    def __init__(self, session: Session):
        self.session = session

    def create_run(self, report: SuiteReport, config: RunConfig) -> VerificationRun:
        """Сохраняет отчет набора вместе со всеми проверками"""
        failed = [c for c in report.checks if not c.passed]
        run = VerificationRun(
            id=str(uuid.uuid4()),
            suite=report.suite,
            seed=report.seed,
            trials=config.trials,
            config_json=config.model_dump_json(),
            passed=report.passed,
            total_checks=len(report.checks),
            failed_checks=len(failed),
            latency_ms=report.elapsed_ms,
        )
        for result in report.checks:
            data = result.as_dict()
            run.checks.append(CheckRecord(
                id=str(uuid.uuid4()),
                name=data["name"],
                passed=data["passed"],
                residual=data["residual"],
                tolerance=data["tolerance"],
                detail_json=json.dumps(data["detail"], sort_keys=True, default=str),
                error=data["error"],
            ))
        self.session.add(run)
        self.session.commit()
        return run

    def get_all_runs(self, suite: Optional[str] = None, limit: Optional[int] = None) -> List[VerificationRun]:
        """Получает запуски, новые первыми"""
        query = self.session.query(VerificationRun)
        if suite:
            query = query.filter(VerificationRun.suite == suite)
        query = query.order_by(desc(VerificationRun.started_at))
        if limit:
            query = query.limit(limit)
        return query.all()

    def get_run_by_id(self, run_id: str) -> Optional[VerificationRun]:
        """Получает запуск по ID"""
        return self.session.query(VerificationRun).filter(VerificationRun.id == run_id).first()


class CheckRepository:
    """Репозиторий для работы с отдельными проверками"""

    def __init__(self, session: Session):
        self.session = session

    def get_checks_by_run(self, run_id: str) -> List[CheckRecord]:
        return self.session.query(CheckRecord).filter(CheckRecord.run_id == run_id).order_by(CheckRecord.name).all()

    def get_failures(self, name: Optional[str] = None) -> List[CheckRecord]:
        """Проваленные проверки, при необходимости по имени"""
        query = self.session.query(CheckRecord).filter(CheckRecord.passed.is_(False))
        if name:
            query = query.filter(CheckRecord.name == name)
        return query.all()


class DatabaseManager:
    """Менеджер для работы с базой данных"""

    def __init__(self, db_path: Optional[str] = None):
        init_database(db_path)
        self.engine, self.SessionLocal = create_engine_and_session(db_path)

    def get_session(self) -> Session:
        """Получает новую сессию"""
        return self.SessionLocal()

    def get_run_repo(self, session: Session = None) -> RunRepository:
        """Получает репозиторий запусков"""
        if session is None:
            session = self.get_session()
        return RunRepository(session)

    def get_check_repo(self, session: Session = None) -> CheckRepository:
        """Получает репозиторий проверок"""
        if session is None:
            session = self.get_session()
        return CheckRepository(session)
