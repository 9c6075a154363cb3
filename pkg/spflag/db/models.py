"""
Модели данных для журнала проверок
"""
from sqlalchemy import create_engine, Column, String, Integer, Float, Text, DateTime, Boolean, ForeignKey
from sqlalchemy.orm import declarative_base, sessionmaker, relationship
from datetime import datetime
from typing import Optional
import os

Base = declarative_base()


class VerificationRun(Base):
    """Запуск одного набора проверок"""
    __tablename__ = 'verification_runs'

    id = Column(String, primary_key=True)
    suite = Column(String, nullable=False)
    seed = Column(Integer, nullable=False)
    trials = Column(Integer, nullable=False)
    config_json = Column(Text)  # JSON с RunConfig
    passed = Column(Boolean, nullable=False)
    total_checks = Column(Integer, nullable=False)
    failed_checks = Column(Integer, nullable=False)
    latency_ms = Column(Integer)
    started_at = Column(DateTime, default=datetime.utcnow)

    # Связь с проверками
    checks = relationship("CheckRecord", back_populates="run", cascade="all, delete-orphan")


class CheckRecord(Base):
    """Результат отдельной проверки"""
    __tablename__ = 'check_records'

    id = Column(String, primary_key=True)
    run_id = Column(String, ForeignKey('verification_runs.id'), nullable=False)
    name = Column(String, nullable=False)
    passed = Column(Boolean, nullable=False)
    residual = Column(Float)  # None для бесконечной невязки
    tolerance = Column(Float)
    detail_json = Column(Text)
    error = Column(Text)  # Ошибка предметной области, если была

    run = relationship("VerificationRun", back_populates="checks")


def get_database_url(db_path: Optional[str] = None):
    """Получает URL базы данных из аргумента или переменных окружения"""
    db_path = db_path or os.getenv("SPFLAG_DB", "./spflag.db")
    return f"sqlite:///{db_path}"


def create_engine_and_session(db_path: Optional[str] = None):
    """Создает движок БД и сессию"""
    database_url = get_database_url(db_path)
    engine = create_engine(database_url, echo=False)
    SessionLocal = sessionmaker(autocommit=False, autoflush=False, bind=engine)
    return engine, SessionLocal


def init_database(db_path: Optional[str] = None):
    """Инициализирует базу данных"""
    engine, _ = create_engine_and_session(db_path)
    Base.metadata.create_all(bind=engine)
    return engine
