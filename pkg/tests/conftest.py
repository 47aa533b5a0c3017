import pytest

from crs.ingest import CourseRecord, JobRecord, SkillEntry, SkillTaxonomy


@pytest.fixture
def taxonomy():
    return SkillTaxonomy.build(
        [
            SkillEntry("python", "Python", ("python programming",)),
            SkillEntry("sql", "SQL", ("Structured Query Language",)),
            SkillEntry("machine-learning", "Machine Learning", ("machine learning", "ml")),
            SkillEntry("docker", "Docker", ("containers",)),
            SkillEntry("statistics", "Statistics", ("statistical analysis",)),
            SkillEntry("java", "Java", ()),
        ]
    )


@pytest.fixture
def catalog():
    def course(cid, name, description, outcomes, level="undergraduate"):
        return CourseRecord(cid, name, description, outcomes, level)

    return [
        course("C01", "Intro to Python", "Learn Python programming from scratch.",
               "Write Python scripts and use core data structures."),
        course("C02", "Databases", "Relational databases and SQL queries.",
               "Design schemas and write SQL."),
        course("C03", "Machine Learning", "Supervised machine learning with Python.",
               "Train and evaluate machine learning models.", "postgraduate"),
        course("C04", "Statistics 1", "Probability and statistics foundations.",
               "Apply statistical analysis to datasets."),
        course("C05", "DevOps", "Deployment pipelines with Docker containers.",
               "Build and ship Docker images."),
        course("C06", "Data Mining", "Mining patterns from large datasets with SQL and Python.",
               "Apply data mining workflows."),
        course("C07", "Java Programming", "Object oriented programming in Java.",
               "Build Java applications."),
        course("C08", "Web Development", "Frontend and backend web development.",
               "Ship a full web application."),
        course("C09", "Deep Learning", "Neural networks, machine learning, and statistics at scale.",
               "Implement deep machine learning models.", "postgraduate"),
        course("C10", "Cloud Computing", "Cloud infrastructure, containers, and Docker.",
               "Deploy services to the cloud with Docker."),
    ]


@pytest.fixture
def jobs():
    return [
        JobRecord("J1", "Data Scientist", "linkedin",
                  "<p>Looking for Python and SQL skills, plus machine learning and statistics.</p>"),
        JobRecord("J2", "Backend Engineer", "seek",
                  "Java developer with SQL experience and Docker deployment skills."),
        JobRecord("J3", "ML Engineer", "indeed",
                  "Machine learning engineer: Python, Docker, statistics."),
    ]
